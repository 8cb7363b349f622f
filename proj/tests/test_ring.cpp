#include "support.hpp"

#include <freeq/errors.hpp>
#include <freeq/ring.hpp>

#include <doctest.h>

#include <random>

using namespace freeq;
using namespace freeq::testing;

namespace {

RingElement term_element(const RingPtr& R, Exponents m, std::size_t w, Rational c = 1)
{
    RingElement x(R);
    x.add_term({std::move(m), w}, c);
    return x;
}

}  // namespace

TEST_SUITE("ring")
{
TEST_CASE("ring construction and validation")
{
    const RingPtr o2 = o2_ring();
    CHECK(o2->rank() == 1);
    CHECK(o2->group()->order() == 2);
    CHECK(polynomial_ring(2)->group()->order() == 1);
    const GroupPtr z2 = builtin_group("Z2");
    CHECK_THROWS_AS(build_ring({{"c"}, {-3}, Representation::trivial(z2, 1)}, z2), ValidationError);
    CHECK_THROWS_AS(build_ring({{"c"}, {2}, Representation::trivial(z2, 1)}, z2), ValidationError);
    // Action mixing a degree -2 and a degree -4 generator.
    CHECK_THROWS_AS(build_ring({{"a", "b"}, {-2, -4}, rep_from(z2, 2, {{"w", Matrix{{0, 1}, {1, 0}}}})}, z2),
                    ValidationError);
}

TEST_CASE("twisted multiplication")
{
    const RingPtr R = o2_ring();
    const std::size_t w = *R->group()->find("w");
    const RingElement c = R->generator(0), wg = R->group_element(w);
    // w * c = (-c) * w.
    CHECK(R->multiply(wg, c) == term_element(R, {1}, w, -1));
    // (c w)(c w) = -c^2 e.
    const RingElement cw = R->multiply(c, wg);
    CHECK(R->multiply(cw, cw) == term_element(R, {2}, R->group()->identity(), -1));
    CHECK(R->multiply(R->one(), cw) == cw);
}

TEST_CASE("trivial group multiplication is polynomial multiplication")
{
    const RingPtr R = polynomial_ring(2);
    const RingElement x1 = R->generator(0), x2 = R->generator(1);
    const RingElement p = x1 + x2;
    const RingElement sq = R->multiply(p, p);
    RingElement expect(R);
    expect.add_term({{2, 0}, 0}, 1);
    expect.add_term({{1, 1}, 0}, 2);
    expect.add_term({{0, 2}, 0}, 1);
    CHECK(sq == expect);
    CHECK(sq.degree() == -4);
}

TEST_CASE("associativity of twisted multiplication on random elements")
{
    std::mt19937 rng(4);
    const RingPtr R = swap_ring();
    auto random_element = [&](int t) {
        RingElement x(R);
        for (const RingTerm& b : R->graded_piece(t))
            if (int c = static_cast<int>(rng() % 5) - 2; c != 0)
                x.add_term(b, c);
        return x;
    };
    for (int trial = 0; trial < 20; ++trial) {
        const RingElement a = random_element(-2), b = random_element(-2), c = random_element(-4);
        CHECK(R->multiply(R->multiply(a, b), c) == R->multiply(a, R->multiply(b, c)));
    }
}

TEST_CASE("graded pieces")
{
    CHECK(o2_ring()->graded_piece(-4).size() == 2);
    CHECK(polynomial_ring(2)->dim(-4) == 3);
    CHECK(o2_ring()->dim(-1) == 0);
    CHECK(o2_ring()->dim(2) == 0);
    CHECK(o2_ring()->dim(0) == 1);
    // Monomial order: x1^2 > x1 x2 > x2^2.
    const RingPtr R = polynomial_ring(2);
    const auto& m = R->monomials(-4);
    CHECK(m == std::vector<Exponents>{{2, 0}, {1, 1}, {0, 2}});
}

TEST_CASE("monomial counts match stars and bars")
{
    // Oracle: number of monomials of total exponent k in r variables is C(k + r - 1, r - 1).
    auto binom = [](int n, int k) {
        long long b = 1;
        for (int i = 1; i <= k; ++i)
            b = b * (n - k + i) / i;
        return b;
    };
    for (std::size_t r = 1; r <= 4; ++r)
        for (int k = 0; k <= 6; ++k)
            CHECK(static_cast<long long>(polynomial_ring(r)->dim(-2 * k)) == binom(k + static_cast<int>(r) - 1,
                                                                                      static_cast<int>(r) - 1));
}

TEST_CASE("group action on monomials")
{
    const RingPtr R = o2_ring();
    const std::size_t w = *R->group()->find("w");
    CHECK(R->action_matrix(w, -4) == Matrix{{1}});
    CHECK(R->action_matrix(w, -6) == Matrix{{-1}});
    CHECK(R->action_matrix(R->group()->identity(), -6).is_identity());
    // Swap action permutes monomials and is a representation in every degree.
    const RingPtr S = swap_ring();
    for (int t = 0; t >= -8; t -= 2) {
        const Matrix a = S->action_matrix(1, t);
        CHECK((a * a).is_identity());
    }
}

TEST_CASE("augmentation ideal pieces")
{
    const auto m = o2_ring()->augmentation_ideal_basis(-4, 0);
    CHECK(m.at(-2) == std::vector<Exponents>{{1}});
    CHECK((m.count(0) == 0 || m.at(0).empty()));
    CHECK(polynomial_ring(2)->augmentation_ideal_basis(-4, -4).at(-4).size() == 3);
}

TEST_CASE("underlying polynomial ring forgets the group")
{
    const RingPtr R = o2_ring();
    const RingPtr P = underlying_polynomial_ring(*R);
    CHECK(P->group()->order() == 1);
    CHECK(P->generators().names == R->generators().names);
    CHECK(same_ring(*R, *o2_ring()));
    CHECK_FALSE(same_ring(*R, *P));
}
}
