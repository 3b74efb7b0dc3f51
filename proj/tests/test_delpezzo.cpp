#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "phiv/delpezzo.hpp"

#include <algorithm>

using namespace phiv::delpezzo;
using phiv::intmat::QVec;
using phiv::intmat::ZVec;
using phiv::lattice::inner;
using phiv::lattice::norm;

static const std::vector<std::pair<int, Variant>> kAllModels = {
    {1, Variant::Generic}, {2, Variant::Generic}, {3, Variant::Generic},
    {4, Variant::Generic}, {5, Variant::Generic}, {6, Variant::Generic},
    {7, Variant::Generic}, {8, Variant::Sigma0},  {8, Variant::Sigma1},
    {9, Variant::P2}};

TEST_CASE("(-1)-class counts") {
    const std::map<std::pair<int, Variant>, size_t> expected = {
        {{1, Variant::Generic}, 240}, {{2, Variant::Generic}, 56},
        {{3, Variant::Generic}, 27},  {{4, Variant::Generic}, 16},
        {{5, Variant::Generic}, 10},  {{6, Variant::Generic}, 6},
        {{7, Variant::Generic}, 3},   {{8, Variant::Sigma0}, 0},
        {{8, Variant::Sigma1}, 1},    {{9, Variant::P2}, 0}};
    for (auto& [key, count] : expected) {
        auto m = model(key.first, key.second);
        CHECK(m.minus_one_classes.size() == count);
        for (auto& a : m.minus_one_classes) {
            CHECK(norm(m.picard, a) == -1);
            CHECK(inner(m.picard, a, m.c1) == 1);
        }
    }
}

TEST_CASE("invalid degree/variant combinations throw") {
    CHECK_THROWS(model(8, Variant::Generic));
    CHECK_THROWS(model(7, Variant::Sigma0));
    CHECK_THROWS(model(9, Variant::Generic));
}

TEST_CASE("enumerators agree on the box oracle") {
    for (auto& [deg, var] : {std::pair<int, Variant>{5, Variant::Generic},
                             {8, Variant::Sigma0},
                             {8, Variant::Sigma1},
                             {9, Variant::P2}}) {
        auto m = model(deg, var);
        auto a = enumerate_minus_one(m);
        auto b = enumerate_minus_one_box(m, 6);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
    }
}

TEST_CASE("anticanonical class and cones") {
    for (auto& [deg, var] : kAllModels) {
        auto m = model(deg, var);
        CHECK(norm(m.picard, m.c1) == deg);
        // c1 is ample: interior of the Kaehler cone
        QVec y(m.rank());
        for (size_t i = 0; i < m.rank(); ++i) y[i] = mpq_class(m.c1[i]);
        CHECK(kaehler_cone_contains(m, y));
        for (auto& g : m.eff_generators) {
            CHECK(in_effective_cone(m, g));
            ZVec neg(g.size());
            for (size_t i = 0; i < g.size(); ++i) neg[i] = -g[i];
            CHECK_FALSE(in_effective_cone(m, neg));
            CHECK(inner(m.picard, g, m.c1) > 0);
        }
    }
}

TEST_CASE("bounded effective enumeration is consistent") {
    auto m = model(6, Variant::Generic);
    QVec y(m.rank());
    for (size_t i = 0; i < m.rank(); ++i) y[i] = 3 * mpq_class(m.c1[i]);
    mpq_class cap = 9;
    auto pts = enumerate_effective(m, y, cap);
    CHECK(!pts.empty());
    for (auto& a : pts) {
        CHECK(in_effective_cone(m, a));
        mpq_class h = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            for (size_t j = 0; j < a.size(); ++j)
                h += mpq_class(a[i] * m.picard.gram[i][j]) * y[j];
        }
        CHECK(h > 0);
        CHECK(h <= cap);
    }
    // the per-norm slices partition the full enumeration
    mpz_class lo = 0, hi = 0;
    for (auto& a : pts) {
        mpz_class n = inner(m.picard, a, a);
        lo = std::min(lo, n);
        hi = std::max(hi, n);
    }
    size_t total = 0;
    for (mpz_class n = lo; n <= hi; ++n)
        total += effective_points_of_norm(m, n, y, cap).size();
    CHECK(total == pts.size());
}

TEST_CASE("Mukai points are isotropic") {
    auto m = model(3, Variant::Generic);
    auto mk = mukai_lattice(m);
    QVec br(m.rank()), bi(m.rank());
    for (size_t i = 0; i < m.rank(); ++i) {
        br[i] = mpq_class(long(i) + 1, 3);
        bi[i] = mpq_class(2 - long(i), 5);
    }
    auto [re, im] = mukai_point(m, br, bi);
    // <Z,Z> = 0 for Z = re + i im
    CHECK(mukai_pairing(mk, re, re) - mukai_pairing(mk, im, im) == 0);
    CHECK(mukai_pairing(mk, re, im) == 0);
}

TEST_CASE("blow-down chain data is exact") {
    for (auto& [deg, var] : {std::pair<int, Variant>{9, Variant::P2},
                             {8, Variant::Sigma1},
                             {8, Variant::Sigma0},
                             {5, Variant::Generic},
                             {2, Variant::Generic}}) {
        auto bd = blow_down(deg, var);
        CHECK(bd.big.degree == deg - 1);
        // iota is isometric
        auto gs = phiv::intmat::mul(
            phiv::intmat::transpose(bd.iota),
            phiv::intmat::mul(bd.big.picard.gram, bd.iota));
        CHECK(gs == bd.small.picard.gram);
        // the image is orthogonal to the contracted class
        for (size_t c = 0; c < bd.small.rank(); ++c) {
            ZVec col(bd.big.rank());
            for (size_t r = 0; r < bd.big.rank(); ++r) col[r] = bd.iota[r][c];
            CHECK(inner(bd.big.picard, col, bd.e_class) == 0);
        }
        // c1(small) lifts to c1(big) + [E]
        ZVec lift = phiv::intmat::mul(bd.iota, bd.small.c1);
        for (size_t r = 0; r < bd.big.rank(); ++r)
            CHECK(lift[r] == bd.big.c1[r] + bd.e_class[r]);
        CHECK(norm(bd.big.picard, bd.e_class) == -1);
    }
}
