#include "phiv/borcherds.hpp"

#include "phiv/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace phiv::borcherds {

namespace {

constexpr double kPi = std::numbers::pi;
// growth rate of the product exponents: |c(l)| <~ B exp((4 pi / sqrt 3) sqrt l)
constexpr double kGrowth = 4.0 * kPi / 1.7320508075688772;

mpz_class to_integer_vector(const QVec& y, ZVec& out) {
    mpz_class den = 1;
    for (auto& q : y) den = lcm(den, q.get_den());
    out.assign(y.size(), 0);
    for (size_t i = 0; i < y.size(); ++i)
        out[i] = mpz_class(y[i].get_num() * (den / y[i].get_den()));
    return den;
}

mpq_class pair_zq(const intmat::ZMat& g, const ZVec& a, const QVec& b) {
    mpq_class s = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        mpq_class row = 0;
        for (size_t j = 0; j < b.size(); ++j)
            if (g[i][j] != 0) row += mpq_class(g[i][j]) * b[j];
        s += mpq_class(a[i]) * row;
    }
    return s;
}

mpq_class pair_qq(const intmat::ZMat& g, const QVec& a, const QVec& b) {
    mpq_class s = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        mpq_class row = 0;
        for (size_t j = 0; j < b.size(); ++j)
            if (g[i][j] != 0) row += mpq_class(g[i][j]) * b[j];
        s += a[i] * row;
    }
    return s;
}

mpz_class floor_q(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

// fitted envelope constants for |c0_k|, |c1_k| against exp(kGrowth sqrt l),
// with a 1.5x safety margin; cached per k
std::pair<double, double> envelope_constants(int k) {
    static std::map<int, std::pair<double, double>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    double b0 = 1.0, b1 = 1.0;
    for (long l = -1; l <= 80; ++l) {
        double c = std::abs(qseries::coeff_c0(k, mpq_class(l)).get_d());
        double env = std::exp(kGrowth * std::sqrt(std::max(0.0, double(l))));
        b0 = std::max(b0, c / env);
    }
    for (long j = 0; j <= 80; ++j) {
        mpq_class l = mpq_class(k, 4) + j;
        double c = std::abs(qseries::coeff_c1(k, l).get_d());
        double env = std::exp(kGrowth * std::sqrt(std::max(0.0, l.get_d())));
        b1 = std::max(b1, c / env);
    }
    auto val = std::make_pair(1.5 * b0, 1.5 * b1);
    cache[k] = val;
    return val;
}

// tail of the factor-log sum over heights > cap: counting polynomial times
// coefficient envelope times exponential decay, summed over the height grid
double tail_bound(int k, int rank, double cap, double y2, double hstep,
                  double count_scale) {
    auto [b0, b1] = envelope_constants(k);
    double a = std::max(16.0, count_scale);
    double total = 0;
    for (int j = 1; j <= 4000; ++j) {
        double h = cap + j * hstep;
        double n = h * h / y2 + 1.0; // Cauchy-Schwarz norm bound at height h
        double count = a * std::pow(1.0 + h, rank + 1);
        double ta = 2.0 * b0 * std::exp(kGrowth * std::sqrt(n) - 2.0 * kPi * h);
        double tb = 2.0 * b1 * std::exp(0.5 * kGrowth * std::sqrt(n) - kPi * h);
        double term = count * (ta + tb);
        total += term;
        if (term < 1e-30 && term < 1e-16 * total) break;
    }
    if (!std::isfinite(total)) total = 1e300;
    return total;
}

struct FactorAccumulator {
    cplx log_sum = 0;
    double abs_sum = 0;
    long terms = 0;
    bool vanished = false;

    // adds c * log(1 - e^{i phase} e^{-decay}) for exact rational phase/decay
    void add(const mpz_class& c, const mpq_class& phase_turns, double decay) {
        double ph = 2.0 * kPi * mpq_class(phase_turns - floor_q(phase_turns)).get_d();
        cplx w = std::exp(cplx(-decay, ph));
        cplx f = 1.0 - w;
        if (std::abs(f) < 1e-300) {
            vanished = true;
            return;
        }
        double cd = c.get_d();
        cplx term = cd * std::log(f);
        log_sum += term;
        abs_sum += std::abs(term);
        ++terms;
    }
};

double fp_floor(double abs_sum, long terms) {
    return 8.0 * 2.220446049250313e-16 * (abs_sum + 1.0 + double(terms));
}

} // namespace

EvalResult phi_eval(delpezzo::Model& m, const TubePoint& z, const mpq_class& cap) {
    if (!delpezzo::kaehler_cone_contains(m, z.y))
        throw std::runtime_error("y not in Kaehler cone");
    const int k = m.degree;
    const auto& g = m.picard.gram;
    ZVec yz;
    mpz_class den = to_integer_vector(z.y, yz);
    mpq_class y2 = pair_qq(g, z.y, z.y);
    for (auto& gen : m.eff_generators)
        if (pair_zq(g, gen, z.y) > cap) throw std::runtime_error("cap too small");

    EvalResult res;
    res.cap_used = cap;
    FactorAccumulator acc;
    // prefactor pi i <c1, z>
    mpq_class c1x = pair_zq(g, m.c1, z.x);
    mpq_class c1y = pair_zq(g, m.c1, z.y);
    cplx pref(-kPi * c1y.get_d(), kPi * c1x.get_d());
    acc.log_sum += pref;
    acc.abs_sum += std::abs(pref);
    ++acc.terms;

    mpz_class nmax = floor_q(cap * cap / y2);
    long per_height_max = 0;
    std::map<mpq_class, long> height_counts;
    // alpha part: c0 supported on alpha^2 >= -1
    for (mpz_class n = -1; n <= nmax; ++n) {
        mpz_class c = qseries::coeff_c0(k, mpq_class(n));
        if (c == 0) continue;
        for (auto& alpha : delpezzo::effective_points_of_norm(m, n, z.y, cap)) {
            mpq_class hx = pair_zq(g, alpha, z.x);
            mpq_class hy = pair_zq(g, alpha, z.y);
            acc.add(c, hx, 2.0 * kPi * hy.get_d());
            ++height_counts[hy];
        }
    }
    // beta part: beta = c1 mod 2L, c1 supported on beta^2 >= k (= k mod 4)
    for (mpz_class n = k; n <= nmax; n += 4) {
        mpz_class c = qseries::coeff_c1(k, mpq_class(n) / 4);
        if (c == 0) continue;
        for (auto& beta : delpezzo::effective_points_of_norm(m, n, z.y, cap)) {
            bool congruent = true;
            for (size_t i = 0; i < beta.size() && congruent; ++i)
                congruent = ((beta[i] - m.c1[i]) % 2 == 0);
            if (!congruent) continue;
            mpq_class hx = pair_zq(g, beta, z.x) / 2;
            mpq_class hy = pair_zq(g, beta, z.y);
            acc.add(c, hx, kPi * hy.get_d());
            ++height_counts[hy];
        }
    }
    for (auto& [h, cnt] : height_counts)
        per_height_max = std::max(per_height_max, cnt);

    res.log_value = acc.log_sum;
    res.value = std::exp(acc.log_sum);
    res.terms_used = acc.terms;
    res.factor_vanished = acc.vanished;
    // height quantum: positive pairings with the scaled integer y are
    // multiples of gcd(G yz)/den
    ZVec w = intmat::mul(g, yz);
    mpz_class hq = 0;
    for (auto& x : w) hq = gcd(hq, x);
    double hstep = mpq_class(hq, den).get_d();
    res.truncation_bound =
        tail_bound(k, int(m.rank()), cap.get_d(), y2.get_d(), hstep,
                   double(per_height_max)) +
        fp_floor(acc.abs_sum, acc.terms);
    return res;
}

double petersson_norm(delpezzo::Model& m, const TubePoint& z, const mpq_class& cap) {
    EvalResult r = phi_eval(m, z, cap);
    mpq_class y2 = pair_qq(m.picard.gram, z.y, z.y);
    double log_norm2 =
        2.0 * r.log_value.real() + (4.0 + m.degree) * std::log(y2.get_d());
    return std::exp(log_norm2);
}

CheckReport translation_check(delpezzo::Model& m, const TubePoint& z,
                              const ZVec& lambda, const mpq_class& cap) {
    TubePoint zt = z;
    for (size_t i = 0; i < lambda.size(); ++i) zt.x[i] += lambda[i];
    EvalResult a = phi_eval(m, z, cap);
    EvalResult b = phi_eval(m, zt, cap);
    mpz_class p = lattice::inner(m.picard, m.c1, lambda);
    cplx phase = (p % 2 == 0) ? cplx(1, 0) : cplx(-1, 0);
    cplx diff = std::exp(b.log_value - a.log_value) / phase - 1.0;
    CheckReport rep;
    rep.discrepancy = std::abs(diff);
    rep.bound = a.truncation_bound + b.truncation_bound;
    rep.pass = rep.discrepancy <= 10.0 * rep.bound;
    return rep;
}

CheckReport weyl_symmetry_check(delpezzo::Model& m, const TubePoint& z,
                                const ZMat& sigma, const mpq_class& cap) {
    ZMat st = intmat::transpose(sigma);
    if (intmat::mul(intmat::mul(st, m.picard.gram), sigma) != m.picard.gram)
        throw std::runtime_error("sigma not an isometry");
    if (intmat::mul(sigma, m.c1) != m.c1)
        throw std::runtime_error("sigma does not fix c1");
    {
        std::vector<ZVec> gens = m.eff_generators, imgs;
        for (auto& gvec : gens) imgs.push_back(intmat::mul(sigma, gvec));
        std::sort(gens.begin(), gens.end());
        std::sort(imgs.begin(), imgs.end());
        if (gens != imgs) throw std::runtime_error("sigma does not preserve Eff");
    }
    TubePoint zs;
    {
        size_t n = z.x.size();
        zs.x.assign(n, 0);
        zs.y.assign(n, 0);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                if (sigma[i][j] == 0) continue;
                zs.x[i] += mpq_class(sigma[i][j]) * z.x[j];
                zs.y[i] += mpq_class(sigma[i][j]) * z.y[j];
            }
    }
    EvalResult a = phi_eval(m, z, cap);
    EvalResult b = phi_eval(m, zs, cap);
    // the weight factor <y,y> is sigma-invariant, so compare |Phi| directly
    CheckReport rep;
    rep.discrepancy = std::abs(std::exp(b.log_value.real() - a.log_value.real()) - 1.0);
    rep.bound = a.truncation_bound + b.truncation_bound;
    rep.pass = rep.discrepancy <= 10.0 * rep.bound;
    return rep;
}

ZMat standard_weyl_element(const delpezzo::Model& m) {
    size_t r = m.rank();
    ZMat sigma = intmat::identity(r);
    if (m.variant == delpezzo::Variant::Sigma0) {
        return {{0, 1}, {1, 0}}; // swap the two rulings
    }
    if (m.variant != delpezzo::Variant::Generic) return sigma;
    if (r >= 4) {
        // (H,E1,E2,E3) -> (2H-E1-E2-E3, H-E2-E3, H-E1-E3, H-E1-E2)
        static const int cremona[4][4] = {{2, 1, 1, 1},
                                          {-1, 0, -1, -1},
                                          {-1, -1, 0, -1},
                                          {-1, -1, -1, 0}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) sigma[i][j] = cremona[i][j];
        return sigma;
    }
    if (r == 3) { // degree 7: swap E1, E2
        sigma[1][1] = 0;
        sigma[1][2] = 1;
        sigma[2][1] = 1;
        sigma[2][2] = 0;
    }
    return sigma;
}

ZVec random_even_translation(const delpezzo::Model& m, std::mt19937_64& rng) {
    size_t r = m.rank();
    ZVec lambda(r);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (size_t i = 0; i < r; ++i) lambda[i] = coef(rng);
    ZVec w = intmat::mul(m.picard.gram, m.c1);
    mpz_class pairing = 0;
    for (size_t i = 0; i < r; ++i) pairing += w[i] * lambda[i];
    if (mpz_odd_p(pairing.get_mpz_t())) {
        // bump one coordinate whose c1-pairing is odd to flip the parity
        for (size_t i = 0; i < r; ++i) {
            if (mpz_odd_p(w[i].get_mpz_t())) {
                lambda[i] += (lambda[i] >= 2 ? -1 : 1);
                break;
            }
        }
    }
    return lambda;
}

std::vector<HeegnerRow> heegner_exponent_scan(delpezzo::Model& m,
                                              const mpq_class& height_cap) {
    std::vector<HeegnerRow> rows;
    // When every cone generator pairs strictly positively with c1, a class of
    // negative c1-height cannot lie in the cone, so the reverse membership
    // query can be answered without a solve.  The scanned ell all have
    // positive height.
    bool c1_separates = true;
    for (const auto& g : m.eff_generators)
        if (lattice::inner(m.picard, g, m.c1) <= 0) c1_separates = false;
    for (auto& ell : lattice::enumerate_norm_vectors(m.picard, -1, m.c1,
                                                     height_cap)) {
        HeegnerRow r;
        r.ell = ell;
        r.height = lattice::inner(m.picard, ell, m.c1);
        r.exponent = delpezzo::in_effective_cone(m, ell) ? 1 : 0;
        if (!c1_separates) {
            ZVec neg(ell.size());
            for (size_t i = 0; i < ell.size(); ++i) neg[i] = -ell[i];
            r.exponent += delpezzo::in_effective_cone(m, neg) ? 1 : 0;
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

EvalResult quasi_pullback(delpezzo::BlowDown& bd, const TubePoint& z,
                          const mpq_class& cap) {
    delpezzo::Model& small = bd.small;
    delpezzo::Model& big = bd.big;
    if (!delpezzo::kaehler_cone_contains(small, z.y))
        throw std::runtime_error("z not on the wall");
    const int kb = big.degree;
    const auto& gs = small.picard.gram;
    mpq_class y2 = pair_qq(gs, z.y, z.y);

    // internal consistency of the alpha' = 0 family: +[E] effective, -[E] not
    {
        ZVec nege(bd.e_class.size());
        for (size_t i = 0; i < nege.size(); ++i) nege[i] = -bd.e_class[i];
        if (!delpezzo::in_effective_cone(big, bd.e_class) ||
            delpezzo::in_effective_cone(big, nege))
            throw std::runtime_error("t-range and effectivity disagree");
    }

    EvalResult res;
    res.cap_used = cap;
    FactorAccumulator acc;
    // (-2 pi i) from the removed linear factor, then the big-model prefactor,
    // which restricts to pi i <c1(small), z> on the wall
    cplx pref = std::log(cplx(0.0, -2.0 * kPi));
    mpq_class c1x = pair_zq(gs, small.c1, z.x);
    mpq_class c1y = pair_zq(gs, small.c1, z.y);
    pref += cplx(-kPi * c1y.get_d(), kPi * c1x.get_d());
    acc.log_sum += pref;
    acc.abs_sum += std::abs(pref);
    ++acc.terms;

    ZVec yz;
    mpz_class den = to_integer_vector(z.y, yz);
    mpz_class nmax = floor_q(cap * cap / y2);
    long per_height_max = 0;
    std::map<mpq_class, long> height_counts;

    auto lift = [&](const ZVec& a, long t) {
        ZVec v = intmat::mul(bd.iota, a);
        for (size_t i = 0; i < v.size(); ++i) v[i] += t * bd.e_class[i];
        return v;
    };

    // grouped alpha part: exponent of (1 - e^{2 pi i <a',z>}) is the sum of
    // c0(a'^2 - t^2) over t with a' + t[E] effective upstairs
    for (mpz_class n = -1; n <= nmax; ++n) {
        for (auto& ap : lattice::enumerate_norm_vectors(small.picard, n, yz,
                                                        cap * den)) {
            mpz_class ex = 0;
            long tmax = long(std::sqrt(double(n.get_si() + 1)) + 1.0);
            for (long t = -tmax; t <= tmax; ++t) {
                mpz_class l = n - mpz_class(t) * t;
                if (l < -1) continue;
                mpz_class c = qseries::coeff_c0(kb, mpq_class(l));
                if (c == 0) continue;
                if (delpezzo::in_effective_cone(big, lift(ap, t))) ex += c;
            }
            if (ex == 0) continue;
            mpq_class hx = pair_zq(gs, ap, z.x);
            mpq_class hy = pair_zq(gs, ap, z.y);
            acc.add(ex, hx, 2.0 * kPi * hy.get_d());
            ++height_counts[hy];
        }
    }
    // grouped beta part: b' = c1(small) mod 2, odd t, c1-support bounds t
    for (mpz_class n = small.degree; n <= nmax; n += 4) {
        for (auto& bp : lattice::enumerate_norm_vectors(small.picard, n, yz,
                                                        cap * den)) {
            bool congruent = true;
            for (size_t i = 0; i < bp.size() && congruent; ++i)
                congruent = ((bp[i] - small.c1[i]) % 2 == 0);
            if (!congruent) continue;
            mpz_class ex = 0;
            long tmax = long(std::sqrt(std::max(0.0, double(n.get_si() - kb))) + 1.0);
            for (long t = -tmax; t <= tmax; t += 1) {
                if ((t % 2 + 2) % 2 != 1) continue;
                mpz_class l4 = n - mpz_class(t) * t;
                if (l4 < kb) continue;
                mpz_class c = qseries::coeff_c1(kb, mpq_class(l4) / 4);
                if (c == 0) continue;
                if (delpezzo::in_effective_cone(big, lift(bp, t))) ex += c;
            }
            if (ex == 0) continue;
            mpq_class hx = pair_zq(gs, bp, z.x) / 2;
            mpq_class hy = pair_zq(gs, bp, z.y);
            acc.add(ex, hx, kPi * hy.get_d());
            ++height_counts[hy];
        }
    }
    for (auto& [h, cnt] : height_counts)
        per_height_max = std::max(per_height_max, cnt);

    res.log_value = acc.log_sum;
    res.value = std::exp(acc.log_sum);
    res.terms_used = acc.terms;
    res.factor_vanished = acc.vanished;
    ZVec w = intmat::mul(gs, yz);
    mpz_class hq = 0;
    for (auto& x : w) hq = gcd(hq, x);
    double hstep = mpq_class(hq, den).get_d();
    res.truncation_bound =
        tail_bound(kb, int(big.rank()), cap.get_d(), y2.get_d(), hstep,
                   double(per_height_max)) +
        fp_floor(acc.abs_sum, acc.terms);
    return res;
}

QPComparison compare_quasi_pullback(delpezzo::BlowDown& bd,
                                    const std::vector<TubePoint>& pts,
                                    const mpq_class& cap) {
    QPComparison cmpres;
    std::vector<cplx> logs;
    for (auto& z : pts) {
        EvalResult a = phi_eval(bd.small, z, cap);
        EvalResult b = quasi_pullback(bd, z, cap);
        logs.push_back(a.log_value - b.log_value);
        cmpres.ratios.push_back(std::exp(a.log_value - b.log_value));
        cmpres.max_bound = std::max(
            cmpres.max_bound, a.truncation_bound + b.truncation_bound);
    }
    cplx mean = 0;
    for (auto& r : cmpres.ratios) mean += r;
    mean /= double(cmpres.ratios.size());
    for (auto& r : cmpres.ratios)
        cmpres.max_rel_spread = std::max(cmpres.max_rel_spread,
                                         std::abs(r / mean - 1.0));
    return cmpres;
}

} // namespace phiv::borcherds
