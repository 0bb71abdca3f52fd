#include <catch2/catch_amalgamated.hpp>

#include "ncser/linalg.hpp"
#include "support/oracles.hpp"

using namespace ncser;

namespace {
const FieldSpec gf2(2);
const FieldSpec gf3(3);

Subspace span_of(std::vector<FVec> rows, long long d, FieldSpec f) {
    return rref(std::move(rows), d, f);
}
}  // namespace

TEST_CASE("field arithmetic") {
    CHECK(gf3.inv(2) == 2);
    CHECK(gf3.reduce(-1) == 2);
    FieldSpec gf7(7);
    for (long long a = 1; a < 7; ++a) CHECK(gf7.mul(a, gf7.inv(a)) == 1);
    CHECK_THROWS_AS(FieldSpec(4), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec(1), std::invalid_argument);
    CHECK_THROWS_AS(gf2.inv(0), std::invalid_argument);
}

TEST_CASE("rref canonicalizes row spaces") {
    SECTION("full rank over GF(2)") {
        auto s = span_of({{1, 1}, {0, 1}}, 2, gf2);
        CHECK(s.basis == std::vector<FVec>{{1, 0}, {0, 1}});
    }
    SECTION("duplicate rows collapse") {
        auto s = span_of({{1, 1, 0}, {1, 1, 0}}, 3, gf2);
        CHECK(s.basis == std::vector<FVec>{{1, 1, 0}});
        CHECK(s.dim() == 1);
    }
    SECTION("dependence over GF(3): (1,2) = 2*(2,1)") {
        auto s = span_of({{2, 1}, {1, 2}}, 2, gf3);
        CHECK(s.dim() == 1);
        CHECK(s.basis == std::vector<FVec>{{1, 2}});
    }
    SECTION("mixed dimensions rejected") {
        CHECK_THROWS_AS(span_of({{1, 0}, {1}}, 2, gf2), std::invalid_argument);
    }
    SECTION("rref is idempotent on every constructed basis") {
        std::mt19937 rng(7);
        for (int t = 0; t < 200; ++t) {
            long long d = 1 + rng() % 5;
            auto s = oracles::random_subspace(d, t % 2 ? gf2 : gf3, rng, 4);
            CHECK(rref(s.basis, d, s.field).basis == s.basis);
        }
    }
}

TEST_CASE("subspace sum") {
    auto e1 = span_of({{1, 0}}, 2, gf2);
    auto e2 = span_of({{0, 1}}, 2, gf2);
    CHECK(subspace_sum(e1, e2) == full_subspace(gf2, 2));
    CHECK(subspace_sum(e1, zero_subspace(gf2, 2)) == e1);

    auto s = subspace_sum(span_of({{1, 1, 0}}, 3, gf2), span_of({{0, 1, 1}}, 3, gf2));
    CHECK(s.dim() == 2);
    CHECK(contains(s, {1, 0, 1}));

    CHECK_THROWS_AS(subspace_sum(e1, zero_subspace(gf2, 3)), std::invalid_argument);
}

TEST_CASE("subspace intersection") {
    auto line10 = span_of({{1, 0}}, 2, gf2);
    auto line11 = span_of({{1, 1}}, 2, gf2);
    CHECK(subspace_intersect(line10, line11) == zero_subspace(gf2, 2));
    CHECK(subspace_intersect(full_subspace(gf2, 2), line11) == line11);

    auto a = span_of({{1, 0, 0}, {0, 1, 0}}, 3, gf2);
    auto b = span_of({{0, 1, 0}, {0, 0, 1}}, 3, gf2);
    CHECK(subspace_intersect(a, b) == span_of({{0, 1, 0}}, 3, gf2));
}

TEST_CASE("contains and pick_outside") {
    auto diag = span_of({{1, 1}}, 2, gf2);
    CHECK(contains(diag, {0, 0}));
    CHECK_FALSE(contains(diag, {1, 0}));
    auto s = span_of({{1, 1, 0}, {0, 1, 1}}, 3, gf2);
    CHECK(contains(s, {1, 0, 1}));
    CHECK_THROWS_AS(contains(diag, {1, 0, 0}), std::invalid_argument);

    auto full = full_subspace(gf2, 2);
    auto e1 = span_of({{1, 0}}, 2, gf2);
    CHECK(pick_outside(full, e1) == FVec{0, 1});
    CHECK(pick_outside(e1, e1) == std::nullopt);
    CHECK(pick_outside(diag, zero_subspace(gf2, 2)) == FVec{1, 1});
    CHECK_THROWS_AS(pick_outside(e1, diag), std::invalid_argument);
}

TEST_CASE("brute-force oracle agreement for sum and intersection") {
    std::mt19937 rng(42);
    for (int t = 0; t < 300; ++t) {
        long long d = 1 + rng() % 4;
        auto a = oracles::random_subspace(d, gf2, rng, 3);
        auto b = oracles::random_subspace(d, gf2, rng, 3);
        CHECK(oracles::enumerate_vectors(subspace_sum(a, b)) == oracles::set_sum(a, b));
        CHECK(oracles::enumerate_vectors(subspace_intersect(a, b)) == oracles::set_intersect(a, b));
    }
}

TEST_CASE("dimension formula and lattice containments") {
    std::mt19937 rng(1234);
    for (int t = 0; t < 400; ++t) {
        FieldSpec f = t % 2 ? gf2 : gf3;
        long long d = 1 + rng() % 6;
        auto a = oracles::random_subspace(d, f, rng, 4);
        auto b = oracles::random_subspace(d, f, rng, 4);
        auto s = subspace_sum(a, b);
        auto i = subspace_intersect(a, b);
        CHECK(a.dim() + b.dim() == s.dim() + i.dim());
        CHECK(subspace_contains(a, i));
        CHECK(subspace_contains(b, i));
        CHECK(subspace_contains(s, a));
        CHECK(subspace_contains(s, b));
    }
}

TEST_CASE("kronecker product") {
    auto m = make_matrix(gf2, 2, {{1, 1}, {0, 1}});
    SECTION("identity scalar") {
        auto one = make_matrix(gf2, 1, {{1}});
        CHECK(kronecker(m, one) == m);
    }
    SECTION("rows") {
        auto r1 = make_matrix(gf2, 2, {{1, 1}});
        auto r2 = make_matrix(gf2, 2, {{1, 0}});
        CHECK(kronecker(r1, r2).rows == std::vector<FVec>{{1, 0, 1, 0}});
    }
    SECTION("identity times identity") {
        CHECK(kronecker(identity_matrix(gf2, 2), identity_matrix(gf2, 2)) == identity_matrix(gf2, 4));
    }
    SECTION("entry formula, randomized") {
        std::mt19937 rng(5);
        for (int t = 0; t < 50; ++t) {
            long long ra = 1 + rng() % 3, ca = 1 + rng() % 3;
            long long rb = 1 + rng() % 3, cb = 1 + rng() % 3;
            std::vector<FVec> ars(ra, FVec(ca)), brs(rb, FVec(cb));
            for (auto& r : ars)
                for (auto& x : r) x = rng() % 3;
            for (auto& r : brs)
                for (auto& x : r) x = rng() % 3;
            Matrix a = make_matrix(gf3, ca, ars), b = make_matrix(gf3, cb, brs);
            Matrix k = kronecker(a, b);
            REQUIRE((long long)k.rows.size() == ra * rb);
            REQUIRE(k.cols == ca * cb);
            for (long long i = 0; i < ra; ++i)
                for (long long kk = 0; kk < rb; ++kk)
                    for (long long j = 0; j < ca; ++j)
                        for (long long l = 0; l < cb; ++l)
                            CHECK(k.rows[i * rb + kk][j * cb + l] ==
                                  gf3.mul(a.rows[i][j], b.rows[kk][l]));
        }
    }
    SECTION("field mismatch") {
        CHECK_THROWS_AS(kronecker(m, identity_matrix(gf3, 1)), std::invalid_argument);
    }
}

TEST_CASE("degenerate shapes") {
    CHECK(zero_subspace(gf2, 0).dim() == 0);
    CHECK(rref({}, 0, gf2).basis.empty());
    auto empty_rows = make_matrix(gf2, 3, {});
    CHECK(row_space(empty_rows) == zero_subspace(gf2, 3));
    CHECK(complement(zero_subspace(gf2, 2)) == full_subspace(gf2, 2));
    CHECK(complement(full_subspace(gf2, 2)) == zero_subspace(gf2, 2));
}
