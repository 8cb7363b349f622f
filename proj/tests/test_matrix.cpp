#include "support.hpp"

#include <freeq/errors.hpp>
#include <freeq/matrix.hpp>

#include <doctest.h>

#include <random>

using namespace freeq;
using freeq::testing::random_matrix;

TEST_SUITE("linalg")
{
TEST_CASE("rational parsing and canonical form")
{
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(to_string(parse_rational("-6/4")) == "-3/2");
    CHECK(to_string(parse_rational("10/5")) == "2");
    CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
    CHECK_THROWS_AS(parse_rational("x"), ValidationError);
}

TEST_CASE("rref of proportional rows")
{
    const RrefResult r = rref(Matrix{{1, 2}, {2, 4}});
    CHECK(r.rank == 1);
    CHECK(r.pivots == std::vector<std::size_t>{0});
    CHECK(r.reduced == Matrix{{1, 2}, {0, 0}});
}

TEST_CASE("rref of identity and zero")
{
    const RrefResult r = rref(Matrix::identity(4));
    CHECK(r.rank == 4);
    CHECK(r.reduced.is_identity());
    CHECK(rank(Matrix{{0}}) == 0);
}

TEST_CASE("kernel basis examples")
{
    const Subspace k = kernel_basis(Matrix{{1, 2}, {2, 4}});
    REQUIRE(k.dim() == 1);
    // Any nonzero multiple of (-2, 1).
    CHECK(k.basis(0, 0) == -2 * k.basis(1, 0));
    CHECK(kernel_basis(Matrix::identity(3)).dim() == 0);
    const Subspace z = kernel_basis(Matrix(2, 3));
    CHECK(z.dim() == 3);
    CHECK(z.ambient == 3);
}

TEST_CASE("solve examples")
{
    auto x = solve(Matrix::identity(2), Vector{3, Rational(-1, 2)});
    REQUIRE(x);
    CHECK(*x == Vector{3, Rational(-1, 2)});
    auto y = solve(Matrix{{1, 1}}, Vector{5});
    REQUIRE(y);
    CHECK((*y)[0] + (*y)[1] == 5);
    CHECK(*y == Vector{5, 0});
    CHECK_FALSE(solve(Matrix{{0}}, Vector{1}));
    CHECK_THROWS_AS(solve(Matrix{{1, 1}}, Vector{1, 2}), DimensionError);
}

TEST_CASE("homology examples")
{
    CHECK(homology_dim(Matrix(0, 3), Matrix(3, 0)) == 3);
    CHECK(homology_dim(Matrix::identity(2), Matrix(2, 0)) == 0);
    // Oracle: dim ker d_out - rank d_in.
    const Matrix d_out{{1, 0}}, d_in{{0}, {1}};
    CHECK(homology_dim(d_out, d_in) == kernel_basis(d_out).dim() - rank(d_in));
    CHECK(homology_dim(d_out, d_in) == 0);
    CHECK_THROWS_AS(homology(Matrix{{1, 0}}, Matrix{{1}, {0}}), InvariantError);
}

TEST_CASE("rank-nullity and kernel property on random matrices")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t m = rng() % 6, n = rng() % 6;
        Matrix a = random_matrix(rng, m, n);
        if (trial % 3 == 0 && m > 1)
            for (std::size_t j = 0; j < n; ++j)
                a(m - 1, j) = a(0, j) * 2;
        const Subspace k = kernel_basis(a);
        CHECK(rank(a) + k.dim() == n);
        CHECK((a * k.basis).is_zero());
        CHECK(rank(a) == rank(a.transpose()));
        CHECK(column_space(a).dim() == rank(a));
    }
}

TEST_CASE("solve agrees with multiplication on random consistent systems")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t m = 1 + rng() % 5, n = 1 + rng() % 5;
        const Matrix a = random_matrix(rng, m, n);
        const Matrix x0 = random_matrix(rng, n, 1);
        const Vector b = a * x0.column(0);
        auto x = solve(a, b);
        REQUIRE(x);
        CHECK(a * *x == b);
    }
}

TEST_CASE("inverse and determinant")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + rng() % 4;
        const Matrix a = random_matrix(rng, n, n);
        auto inv = inverse(a);
        CHECK(inv.has_value() == (determinant(a) != 0));
        if (inv) {
            CHECK((a * *inv).is_identity());
            CHECK(determinant(a) * determinant(*inv) == 1);
        }
    }
    CHECK(determinant(Matrix{{1, 2}, {3, 4}}) == -2);
}

TEST_CASE("quotient map coordinates")
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + rng() % 5;
        const Matrix k = random_matrix(rng, n, rng() % 4);
        const QuotientMap q(n, k);
        CHECK(q.dim() == n - rank(k));
        CHECK((q.matrix() * k).is_zero());
        CHECK((q.matrix() * q.lift_matrix()).is_identity());
        const Matrix v = random_matrix(rng, n, 1);
        CHECK(q.project(v.column(0)) == q.matrix() * v.column(0));
    }
}

TEST_CASE("intersection of subspaces")
{
    const Subspace a{3, Matrix{{1, 0}, {0, 1}, {0, 0}}};
    const Subspace b{3, Matrix{{0, 0}, {1, 0}, {0, 1}}};
    const Subspace c = intersect(a, b);
    REQUIRE(c.dim() == 1);
    CHECK(contains(c, Vector{0, 1, 0}));
    CHECK_FALSE(contains(c, Vector{1, 0, 0}));
}

TEST_CASE("kronecker product dimensions and mixed product")
{
    std::mt19937 rng(9);
    const Matrix a = random_matrix(rng, 2, 3), b = random_matrix(rng, 3, 2);
    const Matrix c = random_matrix(rng, 3, 2), d = random_matrix(rng, 2, 2);
    CHECK(kronecker(a, b) * kronecker(c, d) == kronecker(a * c, b * d));
}
}
