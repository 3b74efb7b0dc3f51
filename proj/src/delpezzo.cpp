#include "phiv/delpezzo.hpp"

#include <algorithm>
#include <stdexcept>

namespace phiv::delpezzo {

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::Generic: return "generic";
        case Variant::Sigma0: return "Sigma0";
        case Variant::Sigma1: return "Sigma1";
        case Variant::P2: return "P2";
    }
    return "?";
}

namespace {

// scale a rational vector to an integer one; returns the denominator used
mpz_class to_integer_vector(const QVec& y, ZVec& out) {
    mpz_class den = 1;
    for (auto& q : y) den = lcm(den, q.get_den());
    out.assign(y.size(), 0);
    for (size_t i = 0; i < y.size(); ++i)
        out[i] = mpz_class(y[i].get_num() * (den / y[i].get_den()));
    return den;
}

mpq_class q_bilinear(const ZMat& g, const QVec& v, const QVec& w) {
    mpq_class s = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        mpq_class row = 0;
        for (size_t j = 0; j < w.size(); ++j)
            if (g[i][j] != 0) row += mpq_class(g[i][j]) * w[j];
        s += v[i] * row;
    }
    return s;
}

} // namespace

Model model(int degree, Variant variant) {
    bool ok = (variant == Variant::Generic && degree >= 1 && degree <= 7) ||
              (variant == Variant::Sigma0 && degree == 8) ||
              (variant == Variant::Sigma1 && degree == 8) ||
              (variant == Variant::P2 && degree == 9);
    if (!ok) throw std::runtime_error("inconsistent variant");
    Model m;
    m.degree = degree;
    m.variant = variant;
    if (variant == Variant::Sigma0) {
        m.picard = lattice::make_U();
        m.c1 = {2, 2};
    } else {
        std::vector<int> d(static_cast<size_t>(10 - degree), -1);
        d[0] = 1;
        m.picard = lattice::make_diag(d);
        m.c1.assign(d.size(), -1);
        m.c1[0] = 3;
    }
    m.picard.name = "L_" + std::to_string(degree) +
                    (degree == 8 ? "_" + variant_name(variant) : "");
    m.minus_one_classes = enumerate_minus_one(m);
    if (variant == Variant::P2) {
        m.eff_generators = {{1}};
    } else if (variant == Variant::Sigma0) {
        m.eff_generators = {{1, 0}, {0, 1}};
    } else if (variant == Variant::Sigma1) {
        m.eff_generators = {{0, 1}, {1, -1}}; // E and H - E
    } else {
        m.eff_generators = m.minus_one_classes;
    }
    if (m.eff_generators.empty()) throw std::runtime_error("empty generator list");
    m.eff_cone.gens = m.eff_generators;
    return m;
}

std::vector<ZVec> enumerate_minus_one(const Model& m) {
    // alpha^2 = -1 with pairing <alpha, c1> in (0,1], i.e. exactly 1
    return lattice::enumerate_norm_vectors(m.picard, -1, m.c1, 1);
}

std::vector<ZVec> enumerate_minus_one_box(const Model& m, long box) {
    return lattice::enumerate_norm_vectors_box(m.picard, -1, m.c1, 1, box);
}

bool kaehler_cone_contains(const Model& m, const QVec& y) {
    if (y.size() != m.rank()) return false;
    if (q_bilinear(m.picard.gram, y, y) <= 0) return false;
    for (auto& g : m.eff_generators) {
        QVec gq(g.size());
        for (size_t i = 0; i < g.size(); ++i) gq[i] = mpq_class(g[i]);
        if (q_bilinear(m.picard.gram, y, gq) <= 0) return false;
    }
    return true;
}

bool in_effective_cone(Model& m, const ZVec& a) { return m.eff_cone.contains(a); }

std::vector<ZVec> effective_points_of_norm(Model& m, const mpz_class& nrm,
                                           const QVec& y, const mpq_class& cap) {
    ZVec yz;
    mpz_class den = to_integer_vector(y, yz);
    std::vector<ZVec> cand =
        lattice::enumerate_norm_vectors(m.picard, nrm, yz, cap * den);
    std::vector<ZVec> out;
    for (auto& v : cand)
        if (in_effective_cone(m, v)) out.push_back(v);
    return out;
}

std::vector<ZVec> enumerate_effective(Model& m, const QVec& y,
                                      const mpq_class& cap) {
    if (!kaehler_cone_contains(m, y)) throw std::runtime_error("y not in Kaehler cone");
    ZVec yz;
    mpz_class den = to_integer_vector(y, yz);
    mpq_class capz = cap * den;
    // a^2 y^2 <= <a,y>^2 on the positive cone bounds the norm above;
    // a = sum l_i g_i with sum l_i <= cap / min<g,y> bounds it below
    mpq_class y2(lattice::norm(m.picard, yz));
    mpq_class nmax_q = capz * capz / y2;
    mpz_class nmax(nmax_q.get_num() / nmax_q.get_den());
    mpz_class minpair = 0, minheight = 0;
    for (auto& g : m.eff_generators) {
        mpz_class h = lattice::inner(m.picard, g, yz);
        if (minheight == 0 || h < minheight) minheight = h;
        for (auto& g2 : m.eff_generators) {
            mpz_class p = lattice::inner(m.picard, g, g2);
            if (p < minpair) minpair = p;
        }
    }
    mpz_class nmin = 0;
    if (minpair < 0) {
        mpq_class s = capz / minheight;
        mpq_class b = s * s * minpair;
        // floor of a negative rational
        nmin = b.get_num() / b.get_den();
        if (nmin * b.get_den() != b.get_num()) nmin -= 1;
    }
    std::vector<ZVec> out;
    for (mpz_class n = nmin; n <= nmax; ++n) {
        std::vector<ZVec> cand =
            lattice::enumerate_norm_vectors(m.picard, n, yz, capz);
        for (auto& v : cand)
            if (in_effective_cone(m, v)) out.push_back(v);
    }
    std::sort(out.begin(), out.end(), [&](const ZVec& a, const ZVec& b) {
        mpz_class ha = lattice::inner(m.picard, a, yz);
        mpz_class hb = lattice::inner(m.picard, b, yz);
        if (ha != hb) return ha < hb;
        return a < b;
    });
    return out;
}

lattice::Lattice mukai_lattice(const Model& m) {
    lattice::Lattice l = lattice::direct_sum(lattice::make_U_minus(), m.picard);
    l.name = "Mukai_" + std::to_string(m.degree);
    return l;
}

std::pair<QVec, QVec> mukai_point(const Model& m, const QVec& b_re,
                                  const QVec& b_im) {
    size_t r = m.rank();
    QVec re(r + 2, 0), im(r + 2, 0);
    re[0] = 1;
    mpq_class rr = q_bilinear(m.picard.gram, b_re, b_re);
    mpq_class ii = q_bilinear(m.picard.gram, b_im, b_im);
    mpq_class ri = q_bilinear(m.picard.gram, b_re, b_im);
    re[1] = (rr - ii) / 2;
    im[1] = ri;
    for (size_t i = 0; i < r; ++i) {
        re[2 + i] = b_re[i];
        im[2 + i] = b_im[i];
    }
    return {re, im};
}

mpq_class mukai_pairing(const lattice::Lattice& mukai, const QVec& v,
                        const QVec& w) {
    return q_bilinear(mukai.gram, v, w);
}

BlowDown blow_down(int degree_small, Variant variant_small) {
    if (degree_small < 2) throw std::runtime_error("no blow-down below degree 2");
    BlowDown bd;
    bd.small = model(degree_small, variant_small);
    if (degree_small == 9) {
        bd.big = model(8, Variant::Sigma1);
        bd.iota = {{1}, {0}};
        bd.e_class = {0, 1};
    } else if (degree_small == 8 && variant_small == Variant::Sigma1) {
        bd.big = model(7, Variant::Generic);
        bd.iota = {{1, 0}, {0, 1}, {0, 0}};
        bd.e_class = {0, 0, 1};
    } else if (degree_small == 8 && variant_small == Variant::Sigma0) {
        // e -> H - E1, f -> H - E2, contracted class H - E1 - E2
        bd.big = model(7, Variant::Generic);
        bd.iota = {{1, 1}, {-1, 0}, {0, -1}};
        bd.e_class = {1, -1, -1};
    } else {
        bd.big = model(degree_small - 1, Variant::Generic);
        size_t rs = bd.small.rank(), rb = bd.big.rank();
        bd.iota = intmat::zmat(rb, rs);
        for (size_t i = 0; i < rs; ++i) bd.iota[i][i] = 1;
        bd.e_class.assign(rb, 0);
        bd.e_class[rb - 1] = 1;
    }
    // sanity: iota is Gram-exact, [E]^2 = -1, image orthogonal to [E], and
    // c1(big) + [E] restricts to iota(c1(small))
    lattice::Embedding emb{bd.small.picard, bd.big.picard, bd.iota};
    if (!emb.verify()) throw std::runtime_error("blow-down embedding broken");
    if (lattice::norm(bd.big.picard, bd.e_class) != -1)
        throw std::runtime_error("blow-down class broken");
    ZVec c1b = bd.big.c1;
    for (size_t i = 0; i < c1b.size(); ++i) c1b[i] += bd.e_class[i];
    ZVec c1s = intmat::mul(bd.iota, intmat::ZVec(bd.small.c1));
    if (c1b != c1s) throw std::runtime_error("blow-down c1 mismatch");
    for (size_t j = 0; j < bd.small.rank(); ++j) {
        ZVec col(bd.big.rank());
        for (size_t r = 0; r < bd.big.rank(); ++r) col[r] = bd.iota[r][j];
        if (lattice::inner(bd.big.picard, col, bd.e_class) != 0)
            throw std::runtime_error("blow-down image not orthogonal");
    }
    return bd;
}

} // namespace phiv::delpezzo
