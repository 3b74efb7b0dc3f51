#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "phiv/lattice.hpp"

#include <algorithm>
#include <numeric>

using namespace phiv::lattice;
using phiv::intmat::ZVec;

TEST_CASE("standard lattices") {
    auto u = make_U();
    CHECK(discriminant(u) == -1);
    CHECK(signature(u) == std::pair<int, int>(1, 1));

    auto e8 = make_E8_minus();
    CHECK(e8.rank() == 8);
    CHECK(discriminant(e8) == 1);
    CHECK(signature(e8) == std::pair<int, int>(0, 8));
    // even: all diagonal entries are even
    for (size_t i = 0; i < 8; ++i) CHECK(e8.gram[i][i] % 2 == 0);

    auto k3 = make_LK3();
    CHECK(k3.rank() == 22);
    CHECK(signature(k3) == std::pair<int, int>(3, 19));
    CHECK(abs(discriminant(k3)) == 1);
}

TEST_CASE("Lambda_k family") {
    for (int k = 1; k <= 9; ++k) {
        auto l = Lambda_k(k, Parity::Odd);
        CHECK(l.rank() == size_t(12 - k));
        CHECK(signature(l) == std::pair<int, int>(2, 10 - k));
        CHECK(abs(discriminant(l)) == 1);
    }
    // the even unimodular form of signature (2,2) is U+U, only at k = 8
    auto even = Lambda_k(8, Parity::Even);
    CHECK(signature(even) == std::pair<int, int>(2, 2));
    for (size_t i = 0; i < even.rank(); ++i) CHECK(even.gram[i][i] % 2 == 0);
    CHECK_THROWS(Lambda_k(3, Parity::Even));
}

TEST_CASE("rescaling scales the discriminant by 2^rank") {
    for (int k : {1, 5, 9}) {
        auto l = Lambda_k(k, Parity::Odd);
        auto l2 = rescale(l, 2);
        mpz_class expect = abs(discriminant(l));
        for (size_t i = 0; i < l.rank(); ++i) expect *= 2;
        CHECK(abs(discriminant(l2)) == expect);
    }
}

TEST_CASE("norm vector enumeration against the box oracle") {
    auto l = make_diag({1, -1, -1});
    ZVec f = {2, -1, -1}; // f^2 = 2 > 0
    for (long nrm : {-1, -2}) {
        for (long cap : {3, 6}) {
            auto fast = enumerate_norm_vectors(l, nrm, f, cap);
            auto box = enumerate_norm_vectors_box(l, nrm, f, cap, 8);
            auto sf = fast, sb = box;
            std::sort(sf.begin(), sf.end());
            std::sort(sb.begin(), sb.end());
            CHECK(sf == sb);
            for (auto& v : fast) {
                CHECK(norm(l, v) == nrm);
                mpz_class h = inner(l, v, f);
                CHECK(h > 0);
                CHECK(h <= cap);
            }
        }
    }
}

TEST_CASE("orthogonal complement of U inside U+U") {
    auto uu = direct_sum(make_U(), make_U());
    Embedding emb;
    emb.source = make_U();
    emb.target = uu;
    emb.matrix = {{1, 0}, {0, 1}, {0, 0}, {0, 0}};
    REQUIRE(emb.verify());
    auto [comp, cemb] = orthogonal_complement(emb);
    CHECK(comp.rank() == 2);
    CHECK(discriminant(comp) == -1);
    CHECK(signature(comp) == std::pair<int, int>(1, 1));
}

TEST_CASE("embedding search finds and verifies small embeddings") {
    auto src = make_diag({-2});
    auto tgt = make_diag({-1, -1});
    auto emb = embedding_search(src, tgt, 2);
    REQUIRE(emb.has_value());
    CHECK(emb->verify());

    // primitive search must not return a doubled vector: (2,0,0) has the
    // right norm in diag(-1,-1,-2) but is imprimitive; (1,1,1) is the answer
    auto src4 = make_diag({-4});
    auto tgt4 = make_diag({-1, -1, -2});
    auto p = embedding_search(src4, tgt4, 2, true);
    REQUIRE(p.has_value());
    CHECK(p->verify());
    mpz_class g = 0;
    for (size_t i = 0; i < 3; ++i) g = gcd(g, p->matrix[i][0]);
    CHECK(g == 1);
}

TEST_CASE("doubled Lambda_9 embeds primitively with the expected complement") {
    auto src = rescale(Lambda_k(9, Parity::Odd), 2);
    auto k3 = make_LK3();
    auto emb = embedding_search(src, k3, 3, true);
    REQUIRE(emb.has_value());
    CHECK(emb->verify());
    auto [comp, cemb] = orthogonal_complement(*emb);
    CHECK(abs(discriminant(comp)) == 8); // 2^{12-9}
}
