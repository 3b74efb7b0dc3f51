#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "phiv/ehgeometry.hpp"

#include <cmath>

using namespace phiv::ehgeometry;

static const std::vector<Z2> kSamplePoints = {
    {cplx(0.7, 0.1), cplx(-0.3, 0.5)},
    {cplx(1.2, -0.4), cplx(0.8, 0.9)},
    {cplx(-2.0, 1.0), cplx(0.1, -0.7)},
    {cplx(0.05, 0.3), cplx(-0.45, 0.2)},
};

TEST_CASE("closed-form Hessian matches finite differences at moderate radii") {
    for (double eps : {0.3, 1.0}) {
        for (const auto& z : kSamplePoints) {
            auto exact = eh_metric(z, eps);
            auto fd = fd_hessian([eps](const Z2& w) {
                return eh_potential(w, eps);
            }, z, 1e-4);
            for (int j = 0; j < 2; ++j) {
                for (int k = 0; k < 2; ++k) {
                    CHECK(std::abs(exact[j][k] - fd[j][k]) <
                          1e-5 * (1.0 + std::abs(exact[j][k])));
                }
            }
        }
    }
}

TEST_CASE("determinant is exactly one") {
    for (double eps : {0.1, 1.0}) {
        for (const auto& z : kSamplePoints) {
            CHECK(std::abs(det_herm(eh_metric(z, eps)) - 1.0) < 1e-12);
            CHECK(min_eigenvalue(eh_metric(z, eps)) > 0);
        }
    }
}

TEST_CASE("potential scaling and error split") {
    for (double eps : {0.2, 0.7}) {
        for (const auto& z : kSamplePoints) {
            double f = eh_potential(z, eps);
            double rt = std::sqrt(eps);
            Z2 w = {z[0] / rt, z[1] / rt};
            CHECK(std::abs(f - eps * eh_potential(w, 1.0)) <
                  1e-12 * std::max(1.0, std::abs(f)));
            auto split = error_term(z, eps);
            CHECK(std::abs(split.e - (split.e1 + split.e2)) <
                  1e-12 * std::max(1.0, std::abs(split.e)));
            // e1 >= 0 and e2 <= 0 by construction
            CHECK(split.e1 >= 0);
            CHECK(split.e2 <= 0);
        }
    }
}

TEST_CASE("cutoff profiles") {
    for (CutoffFn rho : {cutoff, cutoff_alt}) {
        CHECK(rho(0.5) == 1.0);
        CHECK(rho(1.0) == 1.0);
        CHECK(rho(2.0) == 0.0);
        CHECK(rho(3.0) == 0.0);
        for (double t = 1.05; t < 2.0; t += 0.1) {
            CHECK(rho(t) > 0.0);
            CHECK(rho(t) < 1.0);
            CHECK(rho(t) < rho(t - 0.05)); // decreasing
        }
        // C^1 at the junctions: difference quotients shrink linearly
        double d1 = (rho(1.0 + 1e-4) - rho(1.0)) / 1e-4;
        double d2 = (rho(2.0) - rho(2.0 - 1e-4)) / 1e-4;
        CHECK(std::abs(d1) < 1e-3);
        CHECK(std::abs(d2) < 1e-3);
    }
}

TEST_CASE("glued potential interpolates between model and flat") {
    double eps = 0.05, delta = 0.5;
    Z2 inside = {cplx(0.1, 0.05), cplx(-0.08, 0.12)}; // |z| < delta
    Z2 outside = {cplx(1.0, 0.4), cplx(0.3, -0.6)};   // |z| > 2 delta
    CHECK(glued_potential(inside, eps, delta, cutoff) ==
          doctest::Approx(eh_potential(inside, eps)).epsilon(1e-12));
    double u = std::norm(outside[0]) + std::norm(outside[1]);
    CHECK(glued_potential(outside, eps, delta, cutoff) ==
          doctest::Approx(u).epsilon(1e-12));
    auto h = glued_metric(inside, eps, delta, cutoff);
    auto hm = eh_metric(inside, eps);
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
            CHECK(std::abs(h[j][k] - hm[j][k]) < 1e-5);
}

TEST_CASE("positivity probe finds a positive regime") {
    auto r = positivity_probe(cutoff, 0.5, {0.01, 0.02, 0.05});
    CHECK(r.eps_best > 0);
    REQUIRE(!r.margins.empty());
    CHECK(r.margins.front().second > 0);
}

TEST_CASE("second Chern integral equals 3/2") {
    for (double eps : {0.5, 1.0}) {
        auto r = chern2_radial_integral(eps, 40.0, 256);
        CHECK(r.grid_ok);
        CHECK(r.integral == doctest::Approx(1.5).epsilon(0.005));
        CHECK(r.tail_exponent < -6.0); // density decays like r^{-12+}
    }
}

TEST_CASE("restriction to the exceptional divisor") {
    auto rep = exceptional_restriction_check(0.4, {0.0, 0.3, 1.0, 2.5});
    CHECK(rep.max_rel_dev < 0.05);
    // dev(2s)/dev(s) = 2^p for dev ~ s^p; require at least linear vanishing
    CHECK(rep.linear_ratio > 1.9);
}
