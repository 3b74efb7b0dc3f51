#include "phiv/acceptance.hpp"

#include "phiv/borcherds.hpp"
#include "phiv/delpezzo.hpp"
#include "phiv/ehgeometry.hpp"
#include "phiv/invariants.hpp"
#include "phiv/lattice.hpp"
#include "phiv/qseries.hpp"
#include "phiv/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <random>
#include <sstream>

namespace phiv::acceptance {

namespace {

using Clock = std::chrono::steady_clock;
using intmat::QVec;
using intmat::ZMat;
using intmat::ZVec;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", x);
    return buf;
}

std::mt19937_64 rng_for(std::uint64_t seed, int criterion) {
    return std::mt19937_64(seed * 0x9e3779b97f4a7c15ULL +
                           static_cast<std::uint64_t>(criterion));
}

// ---- q-series helpers -----------------------------------------------------

bool series_equal(const qseries::QSeries& a, const qseries::QSeries& b,
                  qseries::exp24_t upto24) {
    if (a.trunc24 < upto24 || b.trunc24 < upto24) return false;
    for (const auto& [e, c] : a.terms)
        if (e < upto24 && b.coeff(e) != c) return false;
    for (const auto& [e, c] : b.terms)
        if (e < upto24 && a.coeff(e) != c) return false;
    return true;
}

// ---- Del Pezzo / Borcherds helpers ---------------------------------------

struct ModelSpec {
    int degree;
    delpezzo::Variant variant;
    long depth;       // y is roughly depth * c1
    long cap;         // product cap for the symmetry checks
};

const std::vector<ModelSpec>& model_specs() {
    using delpezzo::Variant;
    static const std::vector<ModelSpec> specs = {
        {1, Variant::Generic, 8, 20}, {2, Variant::Generic, 6, 18},
        {3, Variant::Generic, 5, 17}, {4, Variant::Generic, 4, 16},
        {5, Variant::Generic, 4, 16}, {6, Variant::Generic, 3, 15},
        {7, Variant::Generic, 3, 15}, {8, Variant::Sigma0, 3, 15},
        {8, Variant::Sigma1, 3, 15},  {9, Variant::P2, 3, 15},
    };
    return specs;
}

mpq_class random_coord(std::mt19937_64& rng, int num_range, int den_max) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    static const int dens[4] = {2, 3, 5, 7};
    std::uniform_int_distribution<int> den(0, den_max);
    mpq_class q(num(rng), dens[den(rng)]);
    q.canonicalize();
    return q;
}

borcherds::TubePoint random_tube_point(delpezzo::Model& m, long depth,
                                       std::mt19937_64& rng) {
    borcherds::TubePoint z;
    size_t r = m.rank();
    z.x.resize(r);
    for (size_t i = 0; i < r; ++i) z.x[i] = random_coord(rng, 3, 3);
    // random depth along the anticanonical axis: keeps the certified height
    // grid coarse (all pairings are multiples of t), so the tail bound stays
    // tight; off-axis y would put the grid on quarter-integers and inflate it
    mpq_class t = mpq_class(depth) +
                  mpq_class(std::uniform_int_distribution<int>(0, 3)(rng), 4);
    t.canonicalize();
    z.y.assign(r, 0);
    for (size_t i = 0; i < r; ++i) z.y[i] = t * m.c1[i];
    return z;
}

// ---- individual criteria --------------------------------------------------

CriterionResult criterion_qseries_oracle() {
    CriterionResult res{1, "q-series oracle, k = 0..9 to order 50", false, ""};
    auto t0 = Clock::now();
    const qseries::exp24_t order24 = 50 * 24;
    // request a couple of extra terms: products shrink the valid range
    const qseries::exp24_t req24 = order24 + 2 * 24;
    bool ok = true;
    for (int k = 0; k <= 9 && ok; ++k) {
        auto a0 = qseries::c0_series(k, req24);
        auto b0 = qseries::c0_series_oracle(k, req24);
        auto a1 = qseries::c1_series(k, req24);
        auto b1 = qseries::c1_series_oracle(k, req24);
        qseries::exp24_t common0 = std::min(a0.trunc24, b0.trunc24);
        qseries::exp24_t common1 = std::min(a1.trunc24, b1.trunc24);
        ok = common0 >= order24 && common1 >= order24 &&
             series_equal(a0, b0, common0) && series_equal(a1, b1, common1);
    }
    double dt = seconds_since(t0);
    res.pass = ok && dt < 30.0;
    res.detail = ok ? "all coefficients match exactly" : "coefficient mismatch";
    if (ok && dt >= 30.0) res.detail += "; time limit exceeded";
    return res;
}

CriterionResult criterion_multiplicativity() {
    CriterionResult res{2, "multiplicativity c_k = c_0 * theta^k to order 50",
                        false, ""};
    const qseries::exp24_t order24 = 50 * 24;
    const qseries::exp24_t pad24 = order24 + 10 * 24;
    auto theta0 = qseries::theta_series(0, pad24);
    auto theta1 = qseries::theta_series(1, pad24);
    auto base0 = qseries::c0_series(0, pad24);
    auto base1 = qseries::c1_series(0, pad24);
    bool ok = true;
    for (int k = 0; k <= 9 && ok; ++k) {
        auto lhs0 = qseries::c0_series(k, pad24);
        auto rhs0 = qseries::mul(base0, qseries::pow(theta0, k));
        auto lhs1 = qseries::c1_series(k, pad24);
        auto rhs1 = qseries::mul(base1, qseries::pow(theta1, k));
        qseries::exp24_t c0m = std::min(lhs0.trunc24, rhs0.trunc24);
        qseries::exp24_t c1m = std::min(lhs1.trunc24, rhs1.trunc24);
        ok = c0m >= order24 && c1m >= order24 &&
             series_equal(lhs0, rhs0, order24) &&
             series_equal(lhs1, rhs1, order24);
    }
    res.pass = ok;
    res.detail = ok ? "exact equality for k = 0..9" : "mismatch";
    return res;
}

CriterionResult criterion_minus_one_counts() {
    CriterionResult res{3, "(-1)-class enumerator agreement, all models",
                        false, ""};
    auto t0 = Clock::now();
    bool ok = true;
    long total = 0;
    static const long expected[10] = {240, 56, 27, 16, 10, 6, 3, 0, 1, 0};
    int idx = 0;
    for (const auto& ms : model_specs()) {
        auto m = delpezzo::model(ms.degree, ms.variant);
        auto a = delpezzo::enumerate_minus_one(m);
        auto b = delpezzo::enumerate_minus_one_box(m, 6);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b || static_cast<long>(a.size()) != expected[idx]) ok = false;
        total += static_cast<long>(a.size());
        ++idx;
    }
    double dt = seconds_since(t0);
    res.pass = ok && dt < 60.0;
    std::ostringstream d;
    d << (ok ? "both enumerators agree, " : "disagreement, ") << total
      << " classes total";
    if (ok && dt >= 60.0) d << "; time limit exceeded";
    res.detail = d.str();
    return res;
}

CriterionResult criterion_embeddings() {
    CriterionResult res{
        4, "primitive Lambda_k(2) embeddings into L_K3, |disc| = 2^{12-k}",
        false, ""};
    auto k3 = lattice::make_LK3();
    bool ok = true;
    std::vector<std::pair<int, lattice::Parity>> cases;
    for (int k = 1; k <= 9; ++k) cases.push_back({k, lattice::Parity::Odd});
    cases.push_back({8, lattice::Parity::Even}); // the even form exists at rank 4
    for (const auto& [k, par] : cases) {
        auto lam = lattice::Lambda_k(k, par);
        auto src = lattice::rescale(lam, 2);
        auto emb = lattice::embedding_search(src, k3, 3, true);
        if (!emb || !emb->verify()) {
            ok = false;
            continue;
        }
        auto comp = lattice::orthogonal_complement(*emb);
        mpz_class disc = abs(lattice::discriminant(comp.first));
        mpz_class want;
        mpz_ui_pow_ui(want.get_mpz_t(), 2, static_cast<unsigned long>(12 - k));
        if (disc != want) ok = false;
    }
    res.pass = ok;
    res.detail = ok ? "all 10 embeddings found, complements as expected"
                    : "embedding or discriminant failure";
    return res;
}

CriterionResult criterion_phi_symmetry(std::uint64_t seed) {
    CriterionResult res{5, "translation and Weyl symmetry of Phi", false, ""};
    auto rng = rng_for(seed, 5);
    bool ok = true;
    double max_disc = 0, max_bound = 0;
    for (const auto& ms : model_specs()) {
        auto m = delpezzo::model(ms.degree, ms.variant);
        ZMat sigma = borcherds::standard_weyl_element(m);
        for (int p = 0; p < 5; ++p) {
            auto z = random_tube_point(m, ms.depth, rng);
            ZVec lambda = borcherds::random_even_translation(m, rng);
            auto tc = borcherds::translation_check(m, z, lambda, ms.cap);
            auto wc = borcherds::weyl_symmetry_check(m, z, sigma, ms.cap);
            max_disc = std::max({max_disc, tc.discrepancy, wc.discrepancy});
            max_bound = std::max({max_bound, tc.bound, wc.bound});
            if (!tc.pass || !wc.pass) ok = false;
        }
    }
    if (max_bound > 1e-10) ok = false;
    res.pass = ok;
    res.detail = "max discrepancy " + fmt(max_disc) + ", max bound " +
                 fmt(max_bound);
    return res;
}

CriterionResult criterion_heegner() {
    CriterionResult res{6, "Heegner wall exponents = 1, height cap 6", false,
                        ""};
    bool ok = true;
    long rows = 0;
    for (const auto& ms : model_specs()) {
        if (ms.degree > 8) continue;
        auto m = delpezzo::model(ms.degree, ms.variant);
        auto scan = borcherds::heegner_exponent_scan(m, 6);
        for (const auto& row : scan)
            if (row.exponent != 1) ok = false;
        rows += static_cast<long>(scan.size());
    }
    res.pass = ok;
    std::ostringstream d;
    d << rows << " walls scanned, "
      << (ok ? "all exponents exactly 1" : "bad exponent found");
    res.detail = d.str();
    return res;
}

CriterionResult criterion_quasi_pullback(std::uint64_t seed) {
    CriterionResult res{7, "quasi-pullback along the degree chain", false, ""};
    auto rng = rng_for(seed, 7);
    using delpezzo::Variant;
    std::vector<std::pair<int, Variant>> pairs = {
        {9, Variant::P2},     {8, Variant::Sigma1}, {8, Variant::Sigma0},
        {7, Variant::Generic}, {6, Variant::Generic}, {5, Variant::Generic},
        {4, Variant::Generic}, {3, Variant::Generic}, {2, Variant::Generic}};
    bool ok = true;
    double max_spread = 0, max_bound = 0;
    for (const auto& [deg, var] : pairs) {
        auto bd = delpezzo::blow_down(deg, var);
        long depth = 3, cap = 18;
        for (const auto& ms : model_specs())
            if (ms.degree == deg && ms.variant == var) {
                depth = ms.depth;
                cap = ms.cap + 3;
            }
        std::vector<borcherds::TubePoint> pts;
        for (int p = 0; p < 5; ++p)
            pts.push_back(random_tube_point(bd.small, depth, rng));
        auto cmp = borcherds::compare_quasi_pullback(bd, pts, cap);
        max_spread = std::max(max_spread, cmp.max_rel_spread);
        max_bound = std::max(max_bound, cmp.max_bound);
        if (cmp.max_rel_spread > 1e-6 || cmp.max_bound > 1e-10) ok = false;
    }
    res.pass = ok;
    res.detail = "max relative spread " + fmt(max_spread) + ", max bound " +
                 fmt(max_bound);
    return res;
}

CriterionResult criterion_eguchi_hanson(std::uint64_t seed) {
    CriterionResult res{8, "Eguchi-Hanson metric, scaling, and c2 integral",
                        false, ""};
    auto t0 = Clock::now();
    auto rng = rng_for(seed, 8);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> logr(std::log(0.05), std::log(10.0));
    bool ok = true;
    double max_det_dev = 0, max_scale_dev = 0;
    for (double eps : {0.1, 1.0}) {
        for (int i = 0; i < 1000; ++i) {
            // random direction on S^3, log-uniform radius
            ehgeometry::Z2 z;
            double n2 = 0;
            do {
                z = {ehgeometry::cplx(unit(rng), unit(rng)),
                     ehgeometry::cplx(unit(rng), unit(rng))};
                n2 = std::norm(z[0]) + std::norm(z[1]);
            } while (n2 < 1e-4 || n2 > 1.0);
            double r = std::exp(logr(rng));
            double scale = r / std::sqrt(n2);
            z[0] *= scale;
            z[1] *= scale;

            auto h = ehgeometry::eh_metric(z, eps);
            max_det_dev =
                std::max(max_det_dev, std::abs(ehgeometry::det_herm(h) - 1.0));

            // F_eps(z) = eps * F_1(z / sqrt(eps))
            double f = ehgeometry::eh_potential(z, eps);
            double rt = std::sqrt(eps);
            ehgeometry::Z2 w = {z[0] / rt, z[1] / rt};
            double f_scaled = eps * ehgeometry::eh_potential(w, 1.0);
            max_scale_dev =
                std::max(max_scale_dev, std::abs(f - f_scaled) /
                                            std::max(1.0, std::abs(f)));

            // the error term splits as e = e1 + e2
            auto split = ehgeometry::error_term(z, eps);
            double e_dev = std::abs(split.e - (split.e1 + split.e2)) /
                           std::max(1.0, std::abs(split.e));
            max_scale_dev = std::max(max_scale_dev, e_dev);
        }
    }
    if (max_det_dev > 1e-8 || max_scale_dev > 1e-10) ok = false;
    auto c2 = ehgeometry::chern2_radial_integral(1.0, 40.0, 256);
    if (!(std::abs(c2.integral - 1.5) <= 0.02) || !c2.grid_ok) ok = false;
    double dt = seconds_since(t0);
    if (dt >= 120.0) ok = false;
    res.pass = ok;
    res.detail = "det dev " + fmt(max_det_dev) + ", scaling dev " +
                 fmt(max_scale_dev) + ", c2 integral " + fmt(c2.integral);
    if (dt >= 120.0) res.detail += "; time limit exceeded";
    return res;
}

CriterionResult criterion_p1_torsion() {
    CriterionResult res{9, "P^1 torsion zeta and metric scaling law", false,
                        ""};
    bool ok = true;
    double max_z0_dev = 0, max_tau_dev = 0;
    for (double c : {0.5, 1.0, 3.141592653589793}) {
        auto z = spectral::p1_torsion_zeta(c, 40);
        max_z0_dev =
            std::max(max_z0_dev, std::abs(std::abs(z.zeta0) - 2.0 / 3.0));
    }
    auto base = spectral::p1_torsion_zeta(1.0, 40);
    for (double lam : {2.0, 10.0}) {
        // g -> lam g scales the eigenvalues (and hence c) by 1/lam
        auto scaled = spectral::p1_torsion_zeta(1.0 / lam, 40);
        double ratio = scaled.tau / base.tau;
        double want = std::pow(lam, -2.0 / 3.0);
        max_tau_dev = std::max(max_tau_dev, std::abs(ratio / want - 1.0));
    }
    if (max_z0_dev > 1e-6 || max_tau_dev > 1e-8) ok = false;
    res.pass = ok;
    res.detail = "|zeta(0)| dev " + fmt(max_z0_dev) + ", scaling dev " +
                 fmt(max_tau_dev);
    return res;
}

CriterionResult criterion_cone_zeta() {
    CriterionResult res{10, "cone partial torsion and divergence coefficient",
                        false, ""};
    spectral::ConeZetaParams params;
    auto r = spectral::cone_zeta_derivative(params);
    bool torsion_ok = (r.partial_torsion == 0.0);
    double rel = std::abs(r.divergence_coefficient - 0.5) / 0.5;
    res.pass = torsion_ok && rel <= 1e-3;
    res.detail = std::string("partial torsion ") +
                 (torsion_ok ? "exactly 0" : "nonzero") +
                 ", divergence coefficient " + fmt(r.divergence_coefficient);
    return res;
}

CriterionResult criterion_bcov(std::uint64_t seed) {
    CriterionResult res{11, "BCOV surface identity on 100 random spectra",
                        false, ""};
    auto rng = rng_for(seed, 11);
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
        auto s = spectral::random_constrained_spectrum(rng);
        if (!spectral::hodge_constraints_ok(s)) ok = false;
        auto id = spectral::bcov_surface_identity(s);
        if (!id.equal) ok = false;
    }
    res.pass = ok;
    res.detail = ok ? "exact equality on all 100 spectra" : "identity failed";
    return res;
}

CriterionResult criterion_invariants(std::uint64_t seed) {
    CriterionResult res{12, "tau_k invariance, c2 arithmetic, chi_orb", false,
                        ""};
    auto rng = rng_for(seed, 12);
    std::uniform_real_distribution<double> pos(0.5, 2.0);
    std::uniform_real_distribution<double> shift(-2.0, 2.0);
    std::uniform_real_distribution<double> scale(0.1, 10.0);
    bool ok = true;
    double max_dev = 0;
    for (int i = 0; i < 100; ++i) {
        invariants::InvariantInputs inp;
        inp.k = 1 + (i % 10);
        inp.tau_Y_gamma = pos(rng);
        inp.vol_Y_gamma = pos(rng);
        inp.xi_l1_norm = pos(rng);
        inp.singular_ratios.resize(inp.k);
        for (double& r : inp.singular_ratios) r = pos(rng);
        inp.bott_chern_integral = shift(rng);
        double tau = invariants::tau_k_assemble(inp);

        auto rescaled = invariants::rescale_xi(inp, scale(rng));
        double tau_r = invariants::tau_k_assemble(rescaled);
        max_dev = std::max(max_dev, std::abs(tau_r / tau - 1.0));

        std::vector<double> u(inp.k);
        for (double& x : u) x = pos(rng);
        auto paired =
            invariants::anomaly_transform(inp, u, shift(rng), pos(rng));
        double tau_a = invariants::tau_k_assemble(paired);
        max_dev = std::max(max_dev, std::abs(tau_a / tau - 1.0));
    }
    if (max_dev > 1e-10) ok = false;
    for (int k = 1; k <= 10; ++k) {
        auto c2 = invariants::c2_integrals(k);
        mpq_class want(16 - k, 32);
        want.canonicalize();
        if (c2.int_c2_Y_over_24 != want) ok = false;
        // resolution consistency: 24 * (16-k)/32 = (24 - 3k/2) / 2
        if (mpq_class(24) * c2.int_c2_Y_over_24 != c2.int_c2_X / 2) ok = false;
        if (invariants::chi_orb(k) != 12L * k) ok = false;
    }
    res.pass = ok;
    res.detail = "max tau_k deviation " + fmt(max_dev) +
                 (ok ? ", exact arithmetic checks hold" : ", exact check failed");
    return res;
}

} // namespace

std::vector<CriterionResult> run_all(std::uint64_t seed) {
    std::vector<CriterionResult> out;
    out.push_back(criterion_qseries_oracle());
    out.push_back(criterion_multiplicativity());
    out.push_back(criterion_minus_one_counts());
    out.push_back(criterion_embeddings());
    out.push_back(criterion_phi_symmetry(seed));
    out.push_back(criterion_heegner());
    out.push_back(criterion_quasi_pullback(seed));
    out.push_back(criterion_eguchi_hanson(seed));
    out.push_back(criterion_p1_torsion());
    out.push_back(criterion_cone_zeta());
    out.push_back(criterion_bcov(seed));
    out.push_back(criterion_invariants(seed));
    return out;
}

bool run(std::uint64_t seed, std::ostream& out) {
    auto results = run_all(seed);
    int passed = 0;
    for (const auto& r : results) {
        out << "[" << std::setw(2) << r.index << "] "
            << (r.pass ? "PASS" : "FAIL") << "  " << r.name << ": " << r.detail
            << "\n";
        if (r.pass) ++passed;
    }
    out << "acceptance: " << passed << "/" << results.size()
        << " criteria passed\n";
    return passed == static_cast<int>(results.size());
}

} // namespace phiv::acceptance
