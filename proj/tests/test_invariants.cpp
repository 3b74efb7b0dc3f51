#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "phiv/invariants.hpp"

#include <cmath>

using namespace phiv::invariants;

static InvariantInputs sample_inputs(int k) {
    InvariantInputs inp;
    inp.k = k;
    inp.tau_Y_gamma = 1.7;
    inp.vol_Y_gamma = 0.9;
    inp.xi_l1_norm = 2.3;
    inp.singular_ratios.assign(k, 1.1);
    for (int i = 0; i < k; ++i) inp.singular_ratios[i] += 0.07 * i;
    inp.bott_chern_integral = -0.45;
    return inp;
}

TEST_CASE("c2 integral arithmetic") {
    for (int k = 1; k <= 10; ++k) {
        auto c = c2_integrals(k);
        mpq_class exp_y(16 - k, 32), exp_x(48 - 3 * k, 2);
        exp_y.canonicalize();
        exp_x.canonicalize();
        CHECK(c.int_c2_Y_over_24 == exp_y);
        CHECK(c.int_c2_X == exp_x);
        // resolving the k quotient points halves the orbifold c2 integral
        CHECK(mpq_class(24) * c.int_c2_Y_over_24 == c.int_c2_X / 2);
    }
    CHECK_THROWS(c2_integrals(11));
}

TEST_CASE("tau_k is invariant under Xi rescaling") {
    for (int k : {1, 4, 10}) {
        auto inp = sample_inputs(k);
        double tau = tau_k_assemble(inp);
        for (double c : {0.1, 0.5, 3.0, 12.0}) {
            double tau2 = tau_k_assemble(rescale_xi(inp, c));
            CHECK(tau2 == doctest::Approx(tau).epsilon(1e-12));
        }
    }
}

TEST_CASE("tau_k is invariant under the anomaly pairing") {
    for (int k : {2, 7}) {
        auto inp = sample_inputs(k);
        double tau = tau_k_assemble(inp);
        std::vector<double> u(k);
        for (int i = 0; i < k; ++i) u[i] = 0.6 + 0.3 * i;
        auto paired = anomaly_transform(inp, u, 0.83, 1.9);
        CHECK(tau_k_assemble(paired) == doctest::Approx(tau).epsilon(1e-12));
    }
}

TEST_CASE("tau_BCOV relation") {
    CHECK(tau_bcov_from_tau_k(2.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS(tau_bcov_from_tau_k(-1.0));
}

TEST_CASE("tau_M assembly and the square root relation") {
    auto t = tau_M_assemble(2.0, 1.3, 0.8, 1.1, 0.9, 10);
    CHECK(t.value == doctest::Approx(std::pow(2.0, 1.0) * 1.3 * 0.8 * 1.1 * 0.9)
                         .epsilon(1e-12));
    auto tk = tau_k_from_tau_M(t.value, 3);
    CHECK(tk.value == doctest::Approx(std::sqrt(t.value)).epsilon(1e-12));
    CHECK(tk.symbol == "C(3)^-1");
}

TEST_CASE("lattice/BCOV comparison bookkeeping") {
    auto b = bcov_comparison_ratio(2, 4, 2, 1, 2);
    // 2^{-6} * (1/2)^{-2} * (4/2)^{-1} = 1/32
    CHECK(b.numeric == mpq_class(1, 32));
    CHECK(b.symbol == "C(2)^8");
    CHECK(b.r == 10);
    CHECK(b.r_tilde == 12);
    CHECK_THROWS(bcov_comparison_ratio(2, 0, 1, 1, 1));
}

TEST_CASE("covolume formula") {
    // 2^{-2} * 1 * |-2| * 3 = 1.5
    CHECK(covolume(1, 1, -2, 3.0) == doctest::Approx(1.5).epsilon(1e-15));
    // 2^{-11} * 4 * 8 * 1 = 1/64
    CHECK(covolume(10, 2, 8, 1.0) ==
          doctest::Approx(1.0 / 64.0).epsilon(1e-15));
}

TEST_CASE("orbifold Euler number") {
    for (int k = 1; k <= 10; ++k) CHECK(chi_orb(k) == 12 * k);
    CHECK_THROWS(chi_orb(0));
}

TEST_CASE("input validation") {
    auto inp = sample_inputs(3);
    inp.singular_ratios.pop_back();
    CHECK_THROWS(tau_k_assemble(inp));
    auto bad = sample_inputs(2);
    bad.xi_l1_norm = 0;
    CHECK_THROWS(tau_k_assemble(bad));
}
