#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "phiv/qseries.hpp"

#include <vector>

using namespace phiv::qseries;

// Pentagonal-number expansion of prod (1-q^n), used as the eta oracle.
static std::vector<mpz_class> euler_function(int order) {
    std::vector<mpz_class> f(order, 0);
    f[0] = 1;
    for (int n = 1; n < order; ++n) {
        for (int i = order - 1; i >= n; --i) f[i] -= f[i - n];
    }
    return f;
}

TEST_CASE("cold memoized coefficient access returns the leading term") {
    // regression: the very first query in a process must build the table even
    // for negative exponents
    CHECK(coeff_c0(5, mpq_class(-1)) == 1);
    CHECK(coeff_c0(0, mpq_class(-1)) == 1);
}

TEST_CASE("arithmetic basics") {
    QSeries one = make_one(240);
    QSeries q = make_monomial(24, 1, 240);
    QSeries s = add(one, q);
    CHECK(s.coeff(0) == 1);
    CHECK(s.coeff(24) == 1);
    CHECK(s.coeff(48) == 0);

    QSeries inv = invert(s);
    QSeries prod = mul(s, inv);
    for (exp24_t e = 0; e < prod.trunc24; e += 24)
        CHECK(prod.coeff(e) == (e == 0 ? 1 : 0));

    QSeries p3 = pow(s, 3); // (1+q)^3
    CHECK(p3.coeff(24) == 3);
    CHECK(p3.coeff(48) == 3);
    CHECK(p3.coeff(72) == 1);

    QSeries pm2 = pow(s, -2); // (1+q)^-2 = 1 - 2q + 3q^2 - ...
    CHECK(pm2.coeff(24) == -2);
    CHECK(pm2.coeff(48) == 3);
    CHECK(pm2.coeff(72) == -4);
}

TEST_CASE("truncation semantics are conservative") {
    QSeries a = make_one(48); // known only below q^2
    QSeries q = make_monomial(24, 1, 240);
    QSeries prod = mul(a, add(make_one(240), q));
    CHECK(prod.trunc24 <= 48 + 24);
    CHECK_THROWS_WITH(static_cast<void>(a.coeff(48)), "beyond truncation");
}

TEST_CASE("eta series against the pentagonal oracle") {
    const int order = 30;
    auto f = euler_function(order);
    QSeries eta = eta_series(1, 1, 24 * order);
    // eta(tau) = q^{1/24} prod (1-q^n)
    for (int n = 0; n < order - 1; ++n) CHECK(eta.coeff(1 + 24 * n) == f[n]);

    QSeries eta2 = eta_series(2, 1, 24 * order);
    for (int n = 0; 2 + 48 * n < eta2.trunc24; ++n)
        CHECK(eta2.coeff(2 + 48 * n) == f[n]);

    // eta^2 by squaring matches the direct power
    QSeries sq = mul(eta, eta);
    QSeries direct = eta_series(1, 2, 24 * order);
    for (exp24_t e = 2; e < std::min(sq.trunc24, direct.trunc24); ++e) {
        CHECK(sq.coeff(e) == direct.coeff(e));
    }
}

TEST_CASE("theta series coefficients") {
    QSeries t0 = theta_series(0, 24 * 12);
    CHECK(t0.coeff(0) == 1);
    CHECK(t0.coeff(24) == 2);
    CHECK(t0.coeff(48) == 0);
    CHECK(t0.coeff(96) == 2);  // q^4
    CHECK(t0.coeff(216) == 2); // q^9

    QSeries t1 = theta_series(1, 24 * 12);
    CHECK(t1.coeff(6) == 2);   // q^{1/4}
    CHECK(t1.coeff(54) == 2);  // q^{9/4}
    CHECK(t1.coeff(150) == 2); // q^{25/4}
    CHECK(t1.coeff(30) == 0);
}

TEST_CASE("exponent generating functions: spot values and support") {
    // leading coefficients
    for (int k = 0; k <= 9; ++k) {
        CHECK(coeff_c0(k, mpq_class(-1)) == 1);
        CHECK(coeff_c0(k, mpq_class(-2)) == 0);
        CHECK(coeff_c1(k, mpq_class(k, 4)) == mpz_class(-8) * (mpz_class(1) << k));
    }
    // c1 support lives on k/4 + Z
    CHECK(coeff_c1(2, mpq_class(1, 4)) == 0);
    CHECK(coeff_c1(2, mpq_class(1, 2)) == -32);
    // c0 is integer-supported
    CHECK(coeff_c0(3, mpq_class(1, 2)) == 0);
}

TEST_CASE("oracle agreement at moderate order") {
    for (int k : {0, 3, 9}) {
        auto a0 = c0_series(k, 24 * 12);
        auto b0 = c0_series_oracle(k, 24 * 12);
        auto a1 = c1_series(k, 24 * 12);
        auto b1 = c1_series_oracle(k, 24 * 12);
        exp24_t c0m = std::min(a0.trunc24, b0.trunc24);
        exp24_t c1m = std::min(a1.trunc24, b1.trunc24);
        REQUIRE(c0m > 24 * 8);
        REQUIRE(c1m > 24 * 8);
        for (exp24_t e = a0.lead24(); e < c0m; ++e)
            CHECK(a0.coeff(e) == b0.coeff(e));
        for (exp24_t e = a1.lead24(); e < c1m; ++e)
            CHECK(a1.coeff(e) == b1.coeff(e));
    }
}

TEST_CASE("multiplicativity at small order") {
    auto theta0 = theta_series(0, 24 * 16);
    auto theta1 = theta_series(1, 24 * 16);
    auto base0 = c0_series(0, 24 * 16);
    auto base1 = c1_series(0, 24 * 16);
    for (int k : {1, 4, 7}) {
        auto lhs0 = c0_series(k, 24 * 16);
        auto rhs0 = mul(base0, pow(theta0, k));
        for (exp24_t e = lhs0.lead24();
             e < std::min(lhs0.trunc24, rhs0.trunc24); ++e)
            CHECK(lhs0.coeff(e) == rhs0.coeff(e));
        auto lhs1 = c1_series(k, 24 * 16);
        auto rhs1 = mul(base1, pow(theta1, k));
        for (exp24_t e = lhs1.lead24();
             e < std::min(lhs1.trunc24, rhs1.trunc24); ++e)
            CHECK(lhs1.coeff(e) == rhs1.coeff(e));
    }
}
