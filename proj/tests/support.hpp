#ifndef FREEQ_TESTS_SUPPORT_HPP
#define FREEQ_TESTS_SUPPORT_HPP

#include <freeq/ext.hpp>
#include <freeq/module.hpp>
#include <freeq/resolution.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace freeq::testing {

inline Representation rep_from(GroupPtr g, std::size_t dim, const std::map<std::string, Matrix>& mats)
{
    std::vector<Matrix> all(g->order(), Matrix::identity(dim));
    for (const auto& [name, m] : mats)
        all[*g->find(name)] = m;
    Representation r(g, dim, std::move(all));
    r.validate();
    return r;
}

// Q[c][Z/2] with w(c) = -c, deg c = -2.
inline RingPtr o2_ring()
{
    const GroupPtr g = builtin_group("Z2");
    return build_ring({{"c"}, {-2}, rep_from(g, 1, {{"w", Matrix{{-1}}}})}, g);
}

// Q[x1..xr] with trivial W.
inline RingPtr polynomial_ring(std::size_t r, int degree = -2, GroupPtr g = trivial_group())
{
    GeneratorSpace gens;
    for (std::size_t i = 0; i < r; ++i) {
        gens.names.push_back("x" + std::to_string(i + 1));
        gens.degrees.push_back(degree);
    }
    gens.action = Representation::trivial(g, r);
    return build_ring(std::move(gens), g);
}

// Q[a, b][Z/2] with w swapping a and b.
inline RingPtr swap_ring()
{
    const GroupPtr g = builtin_group("Z2");
    return build_ring({{"a", "b"}, {-2, -2}, rep_from(g, 2, {{"w", Matrix{{0, 1}, {1, 0}}}})}, g);
}

inline Exponents power(std::size_t nvars, std::size_t i, unsigned k)
{
    Exponents e(nvars, 0);
    e[i] = k;
    return e;
}

// Single term monomial * (basis vector u) of a free module.
inline FreeElement term(std::size_t u, Exponents monomial, Rational c = 1)
{
    FreeElement x;
    add_to(x, {u, std::move(monomial)}, c);
    return x;
}

inline Presentation quotient_of_free(const RingPtr& ring, const std::string& name, int degree,
                                     std::vector<FreeElement> relations)
{
    Presentation p;
    p.name = name;
    p.ring = ring;
    p.generators.push_back(free_generator("g", degree, ring->group()));
    for (auto& r : relations)
        p.relations.push_back({std::move(r)});
    p.validate();
    return p;
}

/*
 * Random torsion module: one free generator in degree `degree`, the pure
 * powers x_i^{a_i} g (a_i <= 3) plus a few random homogeneous relations
 * in degrees >= degree - 6.
 */
inline Presentation random_torsion(const RingPtr& ring, std::mt19937& rng, int degree = 0)
{
    const std::size_t r = ring->rank();
    const std::size_t order = ring->group()->order();
    std::uniform_int_distribution<unsigned> exp_dist(1, 3);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<std::size_t> u_dist(0, order - 1);
    std::vector<FreeElement> rels;
    for (std::size_t i = 0; i < r; ++i)
        rels.push_back(term(0, power(r, i, exp_dist(rng))));
    const int extra = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int k = 0; k < extra; ++k) {
        const int t = -2 * std::uniform_int_distribution<int>(1, 3)(rng);
        FreeElement x;
        for (const Exponents& m : ring->monomials(t))
            for (std::size_t u = 0; u < order; ++u)
                if (const int c = coeff(rng); c != 0 && u_dist(rng) == u)
                    add_to(x, {u, m}, c);
        if (!x.empty())
            rels.push_back(std::move(x));
    }
    return quotient_of_free(ring, "T", degree, std::move(rels));
}

/*
 * Ext_R(Q, N) computed from the Koszul cochains of N, ignoring W:
 *   C^s_t = sum_{|A| = s} N_{t + deg A},
 *   (delta phi)(A u {i}) = sign * x_i phi(A).
 * Independent of the resolution and Hom code in the library.
 */
inline std::map<std::pair<int, int>, std::size_t> koszul_ext_dims(const GradedModule& n, int t_min, int t_max)
{
    const RingPtr& R = n.ring();
    const std::size_t r = R->rank();
    std::vector<std::vector<std::size_t>> subsets(r + 1);
    for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask)
        subsets[static_cast<std::size_t>(__builtin_popcountll(mask))].push_back(mask);
    auto deg = [&](std::size_t mask) {
        int d = 0;
        for (std::size_t i = 0; i < r; ++i)
            if (mask & (std::size_t{1} << i))
                d += R->degree(i);
        return d;
    };
    std::map<std::pair<int, int>, std::size_t> out;
    for (int t = t_min; t <= t_max; ++t) {
        std::vector<std::vector<std::size_t>> offsets(r + 1);
        std::vector<std::size_t> total(r + 1, 0);
        for (std::size_t s = 0; s <= r; ++s)
            for (std::size_t mask : subsets[s]) {
                offsets[s].push_back(total[s]);
                total[s] += n.dim(t + deg(mask));
            }
        std::vector<Matrix> delta(r + 1);
        for (std::size_t s = 0; s <= r; ++s) {
            const std::size_t rows = s == r ? 0 : total[s + 1];
            delta[s] = Matrix(rows, total[s]);
            if (s == r)
                continue;
            for (std::size_t a = 0; a < subsets[s].size(); ++a) {
                const std::size_t mask = subsets[s][a];
                for (std::size_t i = 0; i < r; ++i) {
                    const std::size_t bit = std::size_t{1} << i;
                    if (mask & bit)
                        continue;
                    const std::size_t target = mask | bit;
                    const std::size_t b = static_cast<std::size_t>(
                        std::find(subsets[s + 1].begin(), subsets[s + 1].end(), target) - subsets[s + 1].begin());
                    const int below = __builtin_popcountll(mask & (bit - 1));
                    const Matrix x = n.x_matrix(i, t + deg(mask));
                    const Rational sign = below % 2 == 0 ? 1 : -1;
                    for (std::size_t p = 0; p < x.rows(); ++p)
                        for (std::size_t q = 0; q < x.cols(); ++q)
                            delta[s](offsets[s + 1][b] + p, offsets[s][a] + q) = sign * x(p, q);
                }
            }
        }
        for (std::size_t s = 0; s <= r; ++s) {
            const Matrix d_in = s == 0 ? Matrix(total[0], 0) : delta[s - 1];
            if (const std::size_t h = homology_dim(delta[s], d_in); h != 0)
                out[{static_cast<int>(s), t}] = h;
        }
    }
    return out;
}

// Hom_{R[W]}(QW, N)_t is the joint kernel of the x_i on N_t.
inline std::size_t socle_dim(const GradedModule& n, int t)
{
    const RingPtr& R = n.ring();
    Matrix stacked(0, n.dim(t));
    for (std::size_t i = 0; i < R->rank(); ++i)
        stacked = stacked.vstack(n.x_matrix(i, t));
    return n.dim(t) - rank(stacked);
}

inline Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int range = 3)
{
    std::uniform_int_distribution<int> d(-range, range);
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = d(rng);
    return m;
}

}  // namespace freeq::testing

#endif
