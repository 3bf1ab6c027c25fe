#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drq/expr.hpp"
#include "drq/matrix.hpp"
#include "fixtures.hpp"

using namespace drq;

TEST_CASE("2x2 field inverse") {
    ScalarMatrix m(2, 2, 1);
    m.at(0, 1) = parse_scalar("1/l1", 1);
    m.at(1, 0) = parse_scalar("-1/l1", 1);
    auto [rank, inv] = matrix_rank_inverse(m);
    CHECK(rank == 2);
    REQUIRE(inv.has_value());
    CHECK(inv->at(0, 1) == parse_scalar("-l1", 1));
    CHECK(inv->at(1, 0) == parse_scalar("l1", 1));
    CHECK(*inv * m == ScalarMatrix::identity(2, 1));
}

TEST_CASE("zero and identity") {
    ScalarMatrix z(3, 3, 1);
    auto [zr, zi] = matrix_rank_inverse(z);
    CHECK(zr == 0);
    CHECK(!zi.has_value());
    auto [ir, ii] = matrix_rank_inverse(ScalarMatrix::identity(3, 1));
    CHECK(ir == 3);
    REQUIRE(ii.has_value());
    CHECK(*ii == ScalarMatrix::identity(3, 1));
}

TEST_CASE("random nonsingular-by-construction matrices invert exactly") {
    fixtures::Rng rng;
    for (int t = 0; t < 10; ++t) {
        int n = 3;
        /* L·U with unit diagonals is nonsingular whatever the entries */
        ScalarMatrix L = ScalarMatrix::identity(n, 1), U = ScalarMatrix::identity(n, 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) L.at(i, j) = rng.scalar(1, true);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) U.at(i, j) = rng.scalar(1, true);
        ScalarMatrix m = L * U;
        auto [rank, inv] = matrix_rank_inverse(m);
        CHECK(rank == n);
        REQUIRE(inv.has_value());
        CHECK(m * *inv == ScalarMatrix::identity(n, 1));
    }
}

TEST_CASE("rank of a rectangular rank-1 product") {
    ScalarMatrix col(3, 1, 1), row(1, 4, 1);
    for (int i = 0; i < 3; ++i) col.at(i, 0) = parse_scalar("l1^" + std::to_string(i + 1), 1);
    for (int j = 0; j < 4; ++j) row.at(0, j) = parse_scalar(std::to_string(j + 1), 1);
    CHECK((col * row).rank() == 1);
}

TEST_CASE("nullspace and solve") {
    ScalarMatrix m(2, 3, 1);
    m.at(0, 0) = Scalar(1, 1);
    m.at(0, 1) = Scalar(1, 1);
    m.at(1, 2) = Scalar(1, 1);
    ScalarMatrix ns = nullspace(m);
    CHECK(ns.cols() == 1);
    CHECK((m * ns).is_zero());

    ScalarMatrix b(2, 1, 1);
    b.at(0, 0) = parse_scalar("l1", 1);
    auto x = solve_exact(m, b);
    REQUIRE(x.has_value());
    ScalarMatrix back = m * *x;
    CHECK(back.at(0, 0) == parse_scalar("l1", 1));
    CHECK(back.at(1, 0).is_zero());
}
