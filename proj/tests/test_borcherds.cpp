#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "phiv/borcherds.hpp"

#include <random>

using namespace phiv;
using borcherds::TubePoint;
using intmat::ZVec;

static TubePoint axis_point(const delpezzo::Model& m, const mpq_class& t,
                            const intmat::QVec& x) {
    TubePoint z;
    z.x = x;
    z.y.resize(m.rank());
    for (size_t i = 0; i < m.rank(); ++i) z.y[i] = t * m.c1[i];
    return z;
}

TEST_CASE("evaluation is deterministic across repeated calls") {
    // regression: the first call in a fresh process must agree with later
    // calls (the coefficient tables are built lazily)
    auto m = delpezzo::model(7, delpezzo::Variant::Generic);
    auto z = axis_point(m, mpq_class(13, 4),
                        {mpq_class(1, 3), mpq_class(-2, 5), mpq_class(3, 7)});
    auto a = borcherds::phi_eval(m, z, 15);
    auto b = borcherds::phi_eval(m, z, 15);
    CHECK(a.terms_used == b.terms_used);
    CHECK(a.log_value == b.log_value);
}

TEST_CASE("value, bound, and Petersson norm behave") {
    auto m = delpezzo::model(6, delpezzo::Variant::Generic);
    auto z = axis_point(m, 3, {mpq_class(1, 2), 0, mpq_class(-1, 3), 0});
    auto lo = borcherds::phi_eval(m, z, 10);
    auto hi = borcherds::phi_eval(m, z, 14);
    CHECK(hi.truncation_bound < lo.truncation_bound);
    CHECK(hi.terms_used >= lo.terms_used);
    // the two truncations agree within the coarser certified bound
    CHECK(std::abs(hi.log_value - lo.log_value) <= 10 * lo.truncation_bound);
    CHECK(borcherds::petersson_norm(m, z, 14) > 0);
}

TEST_CASE("translation identity at fixed points") {
    for (auto& [deg, var] :
         {std::pair<int, delpezzo::Variant>{6, delpezzo::Variant::Generic},
          {8, delpezzo::Variant::Sigma0},
          {9, delpezzo::Variant::P2}}) {
        auto m = delpezzo::model(deg, var);
        intmat::QVec x(m.rank());
        for (size_t i = 0; i < m.rank(); ++i)
            x[i] = mpq_class(long(i) + 1, 7);
        auto z = axis_point(m, mpq_class(7, 2), x);
        std::mt19937_64 rng(42);
        for (int rep = 0; rep < 3; ++rep) {
            ZVec lambda = borcherds::random_even_translation(m, rng);
            CHECK(lattice::inner(m.picard, m.c1, lambda) % 2 == 0);
            auto rep_check = borcherds::translation_check(m, z, lambda, 16);
            CHECK(rep_check.pass);
            CHECK(rep_check.discrepancy < 1e-10);
        }
    }
}

TEST_CASE("standard Weyl elements are isometries fixing c1") {
    for (auto& [deg, var] :
         {std::pair<int, delpezzo::Variant>{1, delpezzo::Variant::Generic},
          {4, delpezzo::Variant::Generic},
          {7, delpezzo::Variant::Generic},
          {8, delpezzo::Variant::Sigma0}}) {
        auto m = delpezzo::model(deg, var);
        auto sigma = borcherds::standard_weyl_element(m);
        auto gs = intmat::mul(intmat::transpose(sigma),
                              intmat::mul(m.picard.gram, sigma));
        CHECK(gs == m.picard.gram);
        CHECK(intmat::mul(sigma, m.c1) == m.c1);
    }
}

TEST_CASE("Weyl symmetry of the Petersson norm") {
    auto m = delpezzo::model(5, delpezzo::Variant::Generic);
    auto sigma = borcherds::standard_weyl_element(m);
    intmat::QVec x = {mpq_class(1, 5), mpq_class(-1, 2), mpq_class(2, 3),
                      mpq_class(1, 7), 0};
    auto z = axis_point(m, 4, x);
    auto rep = borcherds::weyl_symmetry_check(m, z, sigma, 16);
    CHECK(rep.pass);
    CHECK(rep.bound < 1e-10);
}

TEST_CASE("Heegner exponents") {
    auto m6 = delpezzo::model(6, delpezzo::Variant::Generic);
    auto rows = borcherds::heegner_exponent_scan(m6, 6);
    CHECK(rows.size() == 36);
    for (auto& r : rows) {
        CHECK(r.exponent == 1);
        CHECK(lattice::norm(m6.picard, r.ell) == -1);
        CHECK(r.height > 0);
        CHECK(r.height <= 6);
    }
    auto m8 = delpezzo::model(8, delpezzo::Variant::Sigma1);
    auto rows8 = borcherds::heegner_exponent_scan(m8, 6);
    CHECK(rows8.size() == 1);
    CHECK(rows8[0].exponent == 1);
    // the ruled quadric has no (-1)-classes at all
    auto m80 = delpezzo::model(8, delpezzo::Variant::Sigma0);
    CHECK(borcherds::heegner_exponent_scan(m80, 6).empty());
}

TEST_CASE("quasi-pullback ratio is constant across points") {
    auto bd = delpezzo::blow_down(6, delpezzo::Variant::Generic);
    std::vector<TubePoint> pts;
    pts.push_back(axis_point(bd.small, 3, {mpq_class(1, 3), 0, 0, 0}));
    pts.push_back(axis_point(bd.small, mpq_class(13, 4),
                             {mpq_class(-1, 2), mpq_class(2, 5), 0,
                              mpq_class(1, 7)}));
    pts.push_back(axis_point(bd.small, mpq_class(7, 2),
                             {0, mpq_class(1, 2), mpq_class(1, 3), 0}));
    auto cmp = borcherds::compare_quasi_pullback(bd, pts, 17);
    CHECK(cmp.ratios.size() == 3);
    CHECK(cmp.max_rel_spread < 1e-8);
    CHECK(cmp.max_bound < 1e-10);
}

TEST_CASE("evaluation rejects bad input") {
    auto m = delpezzo::model(6, delpezzo::Variant::Generic);
    TubePoint z;
    z.x.assign(4, 0);
    z.y.assign(4, 0);
    z.y[0] = -1; // not in the Kaehler cone
    CHECK_THROWS(borcherds::phi_eval(m, z, 10));
}
