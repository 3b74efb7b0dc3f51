#include "phiv/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace phiv::lattice {

using intmat::QMat;
using intmat::QVec;

bool Embedding::verify() const {
    ZMat mt = intmat::transpose(matrix);
    ZMat g = intmat::mul(intmat::mul(mt, target.gram), matrix);
    return g == source.gram;
}

Lattice make_U() { return {{{0, 1}, {1, 0}}, "U"}; }
Lattice make_U_minus() { return {{{0, -1}, {-1, 0}}, "U(-1)"}; }

Lattice make_E8_minus() {
    // negated E8 Cartan matrix, Bourbaki node ordering:
    // chain 1-3-4-5-6-7-8 with node 2 attached to node 4
    static const int edges[][2] = {{1, 3}, {3, 4}, {4, 5}, {5, 6},
                                   {6, 7}, {7, 8}, {2, 4}};
    ZMat g = intmat::zmat(8, 8);
    for (int i = 0; i < 8; ++i) g[i][i] = -2;
    for (auto& e : edges) {
        g[e[0] - 1][e[1] - 1] = 1;
        g[e[1] - 1][e[0] - 1] = 1;
    }
    return {g, "E8(-1)"};
}

Lattice make_diag(const std::vector<int>& entries) {
    ZMat g = intmat::zmat(entries.size(), entries.size());
    for (size_t i = 0; i < entries.size(); ++i) g[i][i] = entries[i];
    return {g, "diag"};
}

Lattice rescale(const Lattice& l, const mpz_class& n) {
    if (n == 0) throw std::runtime_error("rescale by zero");
    Lattice r = l;
    for (auto& row : r.gram)
        for (auto& x : row) x *= n;
    r.name = l.name + "(" + n.get_str() + ")";
    return r;
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
    size_t n = a.rank() + b.rank();
    ZMat g = intmat::zmat(n, n);
    for (size_t i = 0; i < a.rank(); ++i)
        for (size_t j = 0; j < a.rank(); ++j) g[i][j] = a.gram[i][j];
    for (size_t i = 0; i < b.rank(); ++i)
        for (size_t j = 0; j < b.rank(); ++j)
            g[a.rank() + i][a.rank() + j] = b.gram[i][j];
    return {g, a.name + "+" + b.name};
}

Lattice make_LK3() {
    Lattice l = direct_sum(direct_sum(make_U(), make_U()), make_U());
    l = direct_sum(direct_sum(l, make_E8_minus()), make_E8_minus());
    l.name = "L_K3";
    return l;
}

Lattice Lambda_k(int k, Parity parity) {
    if (k < 1 || k > 9) throw std::runtime_error("k out of range");
    if (parity == Parity::Even) {
        // an even unimodular lattice of signature (2, 10-k) exists only when
        // 2-(10-k) = 0 mod 8, i.e. at the rank-4 case k = 8: U + U
        if (k != 8) throw std::runtime_error("even parity only exists at k=8");
        Lattice l = direct_sum(make_U(), make_U());
        l.name = "Lambda_8^even";
        return l;
    }
    std::vector<int> d(static_cast<size_t>(12 - k), -1);
    d[0] = d[1] = 1;
    Lattice l = make_diag(d);
    l.name = "Lambda_" + std::to_string(k);
    return l;
}

mpz_class inner(const Lattice& l, const ZVec& v, const ZVec& w) {
    if (v.size() != l.rank() || w.size() != l.rank())
        throw std::runtime_error("dimension mismatch");
    return intmat::bilinear(l.gram, v, w);
}

mpz_class norm(const Lattice& l, const ZVec& v) { return inner(l, v, v); }

std::pair<int, int> signature(const Lattice& l) { return intmat::signature(l.gram); }

mpz_class discriminant(const Lattice& l) { return intmat::det(l.gram); }

std::pair<Lattice, Embedding> orthogonal_complement(const Embedding& emb) {
    // {x in target : <x, im> = 0} = integer kernel of M^T G_T (saturated)
    ZMat c = intmat::mul(intmat::transpose(emb.matrix), emb.target.gram);
    ZMat basis = intmat::kernel(c); // columns are complement vectors
    ZMat g = intmat::mul(intmat::mul(intmat::transpose(basis), emb.target.gram), basis);
    Lattice comp{g, emb.source.name + "^perp"};
    if (!g.empty() && intmat::det(g) == 0)
        throw std::runtime_error("degenerate complement");
    return {comp, Embedding{comp, emb.target, basis}};
}

namespace {

struct FiberEnum {
    const Lattice* l;
    QMat lmat;     // unit lower triangular
    QVec dvec;     // positive diagonal
    ZMat bbasis;   // kernel basis, columns
    size_t dim;    // fiber dimension

    std::vector<ZVec> out;
    mpz_class target_norm;

    // enumerate integer x with Q_A(x - mu) = R, then reconstruct v
    QVec mu;
    ZVec vp;
    std::vector<long> x;

    void recurse(size_t lvl, const mpq_class& rem) {
        if (rem < 0) return;
        if (lvl == 0 && dim == 0) {
            emit();
            return;
        }
        size_t i = lvl - 1;
        // s = sum_{j>i} L[j][i] (x_j - mu_j)
        mpq_class s = 0;
        for (size_t j = i + 1; j < dim; ++j)
            s += lmat[j][i] * (mpq_class(x[j]) - mu[j]);
        mpq_class center = mu[i] - s;
        double cd = center.get_d();
        double rad = std::sqrt(std::max(0.0, rem.get_d() / dvec[i].get_d()));
        auto fits = [&](long xi) {
            mpq_class dlt = mpq_class(xi) - center;
            return dvec[i] * dlt * dlt <= rem;
        };
        long hi = static_cast<long>(std::floor(cd + rad));
        while (fits(hi + 1)) ++hi;
        while (hi > static_cast<long>(cd - rad) - 2 && !fits(hi)) --hi;
        long lo = static_cast<long>(std::ceil(cd - rad));
        while (fits(lo - 1)) --lo;
        while (lo <= hi && !fits(lo)) ++lo;
        for (long xi = lo; xi <= hi; ++xi) {
            x[i] = xi;
            mpq_class dlt = mpq_class(xi) - center;
            mpq_class used = dvec[i] * dlt * dlt;
            if (i == 0) {
                if (used == rem) emit();
            } else {
                recurse(i, rem - used);
            }
        }
        x[i] = 0;
    }

    void emit() {
        ZVec v = vp;
        for (size_t j = 0; j < dim; ++j) {
            if (x[j] == 0) continue;
            for (size_t r = 0; r < v.size(); ++r) v[r] += x[j] * bbasis[r][j];
        }
        if (intmat::bilinear(l->gram, v, v) == target_norm) out.push_back(v);
    }
};

} // namespace

std::vector<ZVec> enumerate_norm_vectors(const Lattice& l,
                                         const mpz_class& target_norm,
                                         const ZVec& f,
                                         const mpq_class& height_cap) {
    if (norm(l, f) <= 0) throw std::runtime_error("functional not positive");
    size_t n = l.rank();
    ZVec w = intmat::mul(l.gram, f); // pairing functional <v,f> = w.v
    auto [g, xpart] = intmat::solve_gcd(w);
    FiberEnum fe;
    fe.l = &l;
    fe.target_norm = target_norm;
    fe.bbasis = intmat::kernel(ZMat{w});
    fe.dim = fe.bbasis.empty() ? 0 : fe.bbasis[0].size();
    QMat a(fe.dim, QVec(fe.dim));
    {
        ZMat gk = intmat::mul(
            intmat::mul(intmat::transpose(fe.bbasis), l.gram), fe.bbasis);
        for (size_t i = 0; i < fe.dim; ++i)
            for (size_t j = 0; j < fe.dim; ++j) a[i][j] = mpq_class(-gk[i][j]);
    }
    if (fe.dim) std::tie(fe.lmat, fe.dvec) = intmat::ldl(a);
    fe.x.assign(fe.dim, 0);

    std::vector<ZVec> result;
    for (mpz_class h = g; mpq_class(h) <= height_cap; h += g) {
        ZVec vp(n);
        mpz_class q = h / g;
        for (size_t i = 0; i < n; ++i) vp[i] = q * xpart[i];
        // R = (vp^2 - N) + c^T A^{-1} c,  mu = A^{-1} c,  c = B^T G vp
        QVec c(fe.dim);
        {
            ZVec gv = intmat::mul(l.gram, vp);
            for (size_t j = 0; j < fe.dim; ++j) {
                mpz_class s = 0;
                for (size_t r = 0; r < n; ++r)
                    if (fe.bbasis[r][j] != 0 && gv[r] != 0)
                        s += fe.bbasis[r][j] * gv[r];
                c[j] = mpq_class(s);
            }
        }
        mpq_class r = mpq_class(intmat::bilinear(l.gram, vp, vp) - target_norm);
        if (fe.dim) {
            auto mu = intmat::solve(a, c);
            fe.mu = *mu;
            for (size_t j = 0; j < fe.dim; ++j) r += c[j] * fe.mu[j];
        }
        fe.vp = vp;
        fe.out.clear();
        if (r >= 0) fe.recurse(fe.dim, r);
        std::sort(fe.out.begin(), fe.out.end());
        for (auto& v : fe.out) result.push_back(std::move(v));
    }
    return result;
}

std::vector<ZVec> enumerate_norm_vectors_box(const Lattice& l,
                                             const mpz_class& target_norm,
                                             const ZVec& f,
                                             const mpq_class& height_cap,
                                             long box) {
    if (norm(l, f) <= 0) throw std::runtime_error("functional not positive");
    size_t n = l.rank();
    bool diagonal = true;
    for (size_t i = 0; i < n && diagonal; ++i)
        for (size_t j = 0; j < n; ++j)
            if (i != j && l.gram[i][j] != 0) { diagonal = false; break; }
    std::vector<ZVec> out;
    ZVec v(n, -box);
    if (diagonal) {
        // diagonal Gram: norm = sum d_i x_i^2 splits exactly, so scan the
        // positive-entry coordinates freely and prune the negative-entry ones
        // by the remaining sum of squares; still a plain box scan, just with
        // an exact feasibility cut instead of Fincke-Pohst geometry
        std::vector<size_t> pos, neg;
        std::vector<long> wneg;
        for (size_t i = 0; i < n; ++i) {
            if (l.gram[i][i] > 0) {
                pos.push_back(i);
            } else {
                neg.push_back(i);
                wneg.push_back(-l.gram[i][i].get_si());
            }
        }
        long target_l = target_norm.get_si();
        std::fill(v.begin(), v.end(), 0);
        auto emit = [&] {
            mpz_class h = inner(l, v, f);
            if (h > 0 && mpq_class(h) <= height_cap) out.push_back(v);
        };
        std::function<void(size_t, long)> scan_neg = [&](size_t j, long rem) {
            if (j + 1 == neg.size()) {
                // last coordinate: rem must be w * x^2 exactly
                if (rem % wneg[j] != 0) return;
                long sq = rem / wneg[j];
                long x = std::lround(std::sqrt(double(sq)));
                while (x * x > sq) --x;
                while ((x + 1) * (x + 1) <= sq) ++x;
                if (x * x != sq || x > box) return;
                v[neg[j]] = x;
                emit();
                if (x != 0) {
                    v[neg[j]] = -x;
                    emit();
                }
                v[neg[j]] = 0;
                return;
            }
            size_t i = neg[j];
            long w = wneg[j];
            for (long x = 0; w * x * x <= rem && x <= box; ++x) {
                v[i] = x;
                scan_neg(j + 1, rem - w * x * x);
                if (x != 0) {
                    v[i] = -x;
                    scan_neg(j + 1, rem - w * x * x);
                }
            }
            v[i] = 0;
        };
        std::function<void(size_t, long)> scan_pos = [&](size_t j, long acc) {
            if (j == pos.size()) {
                long rem = acc - target_l;
                if (rem < 0) return;
                if (neg.empty()) {
                    if (rem == 0) emit();
                } else {
                    scan_neg(0, rem);
                }
                return;
            }
            size_t i = pos[j];
            long d = l.gram[i][i].get_si();
            for (long x = -box; x <= box; ++x) {
                v[i] = x;
                scan_pos(j + 1, acc + d * x * x);
            }
            v[i] = 0;
        };
        scan_pos(0, 0);
    } else {
        while (true) {
            mpz_class h = inner(l, v, f);
            if (h > 0 && mpq_class(h) <= height_cap && norm(l, v) == target_norm)
                out.push_back(v);
            size_t i = 0;
            while (i < n && v[i] == box) v[i++] = -box;
            if (i == n) break;
            v[i] += 1;
        }
    }
    std::sort(out.begin(), out.end(), [&](const ZVec& a, const ZVec& b) {
        mpz_class ha = inner(l, a, f), hb = inner(l, b, f);
        if (ha != hb) return ha < hb;
        return a < b;
    });
    return out;
}

namespace {

struct Candidate {
    ZVec v;
    mpz_class nrm;
};

std::vector<Candidate> candidate_pool(const Lattice& t, long bound, int support) {
    size_t n = t.rank();
    std::vector<Candidate> pool;
    std::vector<size_t> idx(static_cast<size_t>(support));
    // all vectors with <= `support` nonzero coordinates in [-bound, bound]
    std::function<void(size_t, size_t, ZVec&)> gen = [&](size_t start, size_t left,
                                                         ZVec& v) {
        {
            bool nonzero = false;
            for (auto& c : v)
                if (c != 0) { nonzero = true; break; }
            if (nonzero) pool.push_back({v, intmat::bilinear(t.gram, v, v)});
        }
        if (left == 0) return;
        for (size_t p = start; p < n; ++p) {
            for (long c = -bound; c <= bound; ++c) {
                if (c == 0) continue;
                v[p] = c;
                gen(p + 1, left - 1, v);
            }
            v[p] = 0;
        }
    };
    ZVec v(n, 0);
    gen(0, static_cast<size_t>(support), v);
    // dedup and order simple-first
    std::sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
        auto key = [](const Candidate& c) {
            int sup = 0;
            mpz_class mx = 0;
            for (auto& x : c.v) {
                if (x != 0) ++sup;
                if (abs(x) > mx) mx = abs(x);
            }
            return std::pair<int, mpz_class>(sup, mx);
        };
        auto ka = key(a), kb = key(b);
        if (ka != kb) return ka < kb;
        return a.v < b.v;
    });
    pool.erase(std::unique(pool.begin(), pool.end(),
                           [](const Candidate& a, const Candidate& b) {
                               return a.v == b.v;
                           }),
               pool.end());
    return pool;
}

} // namespace

namespace {

// the column span of `cols` (vectors in Z^dim) is primitive in Z^dim iff its
// dot-product Gram determinant matches that of its saturation
bool span_is_primitive(const std::vector<ZVec>& cols, size_t dim) {
    size_t i = cols.size();
    ZMat mt = intmat::zmat(i, dim); // rows are the chosen vectors
    for (size_t r = 0; r < i; ++r) mt[r] = cols[r];
    ZMat k = intmat::kernel(mt);                 // dim x (dim - i)
    ZMat sat = intmat::kernel(intmat::transpose(k)); // dim x i, saturated basis
    ZMat m = intmat::transpose(mt);
    mpz_class dm = intmat::det(intmat::mul(mt, m));
    ZMat satt = intmat::transpose(sat);
    mpz_class ds = intmat::det(intmat::mul(satt, sat));
    return dm == ds;
}

} // namespace

std::optional<Embedding> embedding_search(const Lattice& s, const Lattice& t,
                                          long coefficient_bound,
                                          bool require_primitive) {
    if (s.rank() > t.rank()) throw std::runtime_error("source rank too large");
    for (int support : {2, 3}) {
        std::vector<Candidate> pool = candidate_pool(t, coefficient_bound, support);
        std::vector<ZVec> chosen;
        long long nodes = 0;
        const long long node_cap = 20000000;
        std::function<bool(size_t)> bt = [&](size_t i) -> bool {
            if (i == s.rank()) return true;
            for (auto& c : pool) {
                if (++nodes > node_cap) return false;
                if (c.nrm != s.gram[i][i]) continue;
                bool ok = true;
                for (size_t j = 0; j < i && ok; ++j)
                    ok = (intmat::bilinear(t.gram, chosen[j], c.v) == s.gram[j][i]);
                if (!ok) continue;
                chosen.push_back(c.v);
                if (!require_primitive || span_is_primitive(chosen, t.rank())) {
                    if (bt(i + 1)) return true;
                }
                chosen.pop_back();
            }
            return false;
        };
        if (bt(0)) {
            ZMat m = intmat::zmat(t.rank(), s.rank());
            for (size_t j = 0; j < s.rank(); ++j)
                for (size_t r = 0; r < t.rank(); ++r) m[r][j] = chosen[j][r];
            Embedding e{s, t, m};
            if (!e.verify()) throw std::runtime_error("embedding verification failed");
            return e;
        }
    }
    return std::nullopt;
}

} // namespace phiv::lattice
