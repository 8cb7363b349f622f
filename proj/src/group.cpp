#include <freeq/errors.hpp>
#include <freeq/group.hpp>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>

namespace freeq {

std::optional<std::size_t> FiniteGroup::find(const std::string& name) const
{
    auto it = std::find(m_names.begin(), m_names.end(), name);
    if (it == m_names.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - m_names.begin());
}

FiniteGroup group_from_table(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table)
{
    const std::size_t n = names.size();
    if (n == 0)
        throw ValidationError("group has no elements");
    if (table.size() != n)
        throw ValidationError("multiplication table has " + std::to_string(table.size()) + " rows for " +
                              std::to_string(n) + " elements");
    for (std::size_t a = 0; a < n; ++a) {
        if (table[a].size() != n)
            throw ValidationError("multiplication table row " + names[a] + " has the wrong length");
        for (auto v : table[a])
            if (v >= n)
                throw ValidationError("multiplication table row " + names[a] + " names an unknown element");
    }
    {
        std::vector<std::string> sorted = names;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ValidationError("duplicate element names");
    }
    // Cancellation: every row and column is a permutation.
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<bool> row_seen(n, false), col_seen(n, false);
        for (std::size_t b = 0; b < n; ++b) {
            if (row_seen[table[a][b]])
                throw ValidationError("cancellation fails: row " + names[a] + " is not a permutation");
            row_seen[table[a][b]] = true;
            if (col_seen[table[b][a]])
                throw ValidationError("cancellation fails: column " + names[a] + " is not a permutation");
            col_seen[table[b][a]] = true;
        }
    }
    std::optional<std::size_t> identity;
    for (std::size_t e = 0; e < n && !identity; ++e) {
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a)
            ok = table[e][a] == a && table[a][e] == a;
        if (ok)
            identity = e;
    }
    if (!identity)
        throw ValidationError("missing identity element");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw ValidationError("non-associative: (" + names[a] + "*" + names[b] + ")*" + names[c] +
                                          " != " + names[a] + "*(" + names[b] + "*" + names[c] + ")");
    std::vector<std::size_t> inv(n);
    for (std::size_t a = 0; a < n; ++a) {
        auto it = std::find(table[a].begin(), table[a].end(), *identity);
        std::size_t b = static_cast<std::size_t>(it - table[a].begin());
        if (table[b][a] != *identity)
            throw ValidationError("missing inverse for " + names[a]);
        inv[a] = b;
    }
    FiniteGroup g;
    g.m_names = std::move(names);
    g.m_table = std::move(table);
    g.m_inverse = std::move(inv);
    g.m_identity = *identity;
    return g;
}

namespace {

using Perm = std::vector<std::size_t>;

// Multiplication table of a closed set of permutations of {0..d-1}, in the
// given element order; the identity permutation must be present.
GroupPtr group_from_permutations(std::vector<Perm> elems, std::vector<std::string> names)
{
    const std::size_t n = elems.size();
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            // (a*b)(x) = a(b(x))
            Perm c(elems[a].size());
            for (std::size_t x = 0; x < c.size(); ++x)
                c[x] = elems[a][elems[b][x]];
            auto it = std::find(elems.begin(), elems.end(), c);
            if (it == elems.end())
                throw InvariantError("permutation set is not closed");
            table[a][b] = static_cast<std::size_t>(it - elems.begin());
        }
    return std::make_shared<const FiniteGroup>(group_from_table(std::move(names), std::move(table)));
}

}  // namespace

GroupPtr trivial_group()
{
    return cyclic_group(1);
}

GroupPtr cyclic_group(std::size_t n)
{
    if (n == 0)
        throw ValidationError("cyclic group of order 0");
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
        names.push_back(a == 0 ? "e" : (n == 2 ? "w" : "g" + std::to_string(a)));
        for (std::size_t b = 0; b < n; ++b)
            table[a][b] = (a + b) % n;
    }
    return std::make_shared<const FiniteGroup>(group_from_table(std::move(names), std::move(table)));
}

GroupPtr klein_four_group()
{
    std::vector<std::string> names{"e", "a", "b", "ab"};
    // bit 0 = a, bit 1 = b
    std::vector<std::vector<std::size_t>> table(4, std::vector<std::size_t>(4));
    for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t y = 0; y < 4; ++y)
            table[x][y] = x ^ y;
    return std::make_shared<const FiniteGroup>(group_from_table(std::move(names), std::move(table)));
}

GroupPtr symmetric_group(std::size_t n)
{
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<Perm> elems;
    std::vector<std::string> names;
    do {
        elems.push_back(p);
        std::string name;
        for (auto x : p)
            name += std::to_string(x);
        names.push_back(name);
    } while (std::next_permutation(p.begin(), p.end()));
    return group_from_permutations(std::move(elems), std::move(names));
}

GroupPtr dihedral_group(std::size_t n)
{
    if (n < 2)
        throw ValidationError("dihedral group needs n >= 2");
    std::vector<Perm> elems;
    std::vector<std::string> names;
    for (std::size_t k = 0; k < n; ++k) {
        Perm p(n);
        for (std::size_t x = 0; x < n; ++x)
            p[x] = (x + k) % n;
        elems.push_back(p);
        names.push_back(k == 0 ? "e" : "r" + std::to_string(k));
    }
    for (std::size_t k = 0; k < n; ++k) {
        Perm p(n);
        for (std::size_t x = 0; x < n; ++x)
            p[x] = (2 * n - x - k) % n;  // s r^k : x -> -(x+k)
        elems.push_back(p);
        names.push_back(k == 0 ? "s" : "sr" + std::to_string(k));
    }
    return group_from_permutations(std::move(elems), std::move(names));
}

GroupPtr builtin_group(const std::string& name)
{
    if (name == "trivial" || name == "Z1")
        return trivial_group();
    if (name == "Z2xZ2" || name == "V4")
        return klein_four_group();
    if (name.size() > 1 && (name[0] == 'Z' || name[0] == 'S' || name[0] == 'D') &&
        std::all_of(name.begin() + 1, name.end(), [](unsigned char c) { return std::isdigit(c); })) {
        std::size_t n = std::stoul(name.substr(1));
        if (name[0] == 'Z')
            return cyclic_group(n);
        if (name[0] == 'S' && n >= 1 && n <= 5)
            return symmetric_group(n);
        if (name[0] == 'D')
            return dihedral_group(n);
    }
    throw ValidationError("unknown builtin group '" + name + "'");
}

Representation::Representation(GroupPtr group, std::size_t dim, std::vector<Matrix> matrices)
    : m_group(std::move(group)), m_dim(dim), m_matrices(std::move(matrices))
{
    if (!m_group)
        throw DimensionError("representation without a group");
    if (m_matrices.size() != m_group->order())
        throw ValidationError("representation needs one matrix per group element (" +
                              std::to_string(m_group->order()) + "), got " + std::to_string(m_matrices.size()));
    for (std::size_t g = 0; g < m_matrices.size(); ++g)
        if (m_matrices[g].rows() != dim || m_matrices[g].cols() != dim)
            throw ValidationError("matrix for " + m_group->name(g) + " is not " + std::to_string(dim) + "x" +
                                  std::to_string(dim));
}

void Representation::validate() const
{
    const auto& G = *m_group;
    if (!m_matrices[G.identity()].is_identity())
        throw ValidationError("identity element does not act as the identity");
    for (std::size_t a = 0; a < G.order(); ++a)
        for (std::size_t b = 0; b < G.order(); ++b)
            if (!(m_matrices[G.mul(a, b)] == m_matrices[a] * m_matrices[b]))
                throw ValidationError("not a homomorphism: rho(" + G.name(a) + "*" + G.name(b) + ") != rho(" +
                                      G.name(a) + ") rho(" + G.name(b) + ")");
}

Representation Representation::trivial(GroupPtr group, std::size_t dim)
{
    std::vector<Matrix> mats(group->order(), Matrix::identity(dim));
    return Representation(std::move(group), dim, std::move(mats));
}

Representation Representation::regular(GroupPtr group)
{
    const std::size_t n = group->order();
    std::vector<Matrix> mats;
    for (std::size_t g = 0; g < n; ++g) {
        Matrix m(n, n);
        for (std::size_t h = 0; h < n; ++h)
            m(group->mul(g, h), h) = 1;
        mats.push_back(std::move(m));
    }
    return Representation(std::move(group), n, std::move(mats));
}

Representation direct_sum(const Representation& a, const Representation& b)
{
    const std::size_t n = a.dim() + b.dim();
    std::vector<Matrix> mats;
    for (std::size_t g = 0; g < a.group()->order(); ++g) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j)
                m(i, j) = a(g)(i, j);
        for (std::size_t i = 0; i < b.dim(); ++i)
            for (std::size_t j = 0; j < b.dim(); ++j)
                m(a.dim() + i, a.dim() + j) = b(g)(i, j);
        mats.push_back(std::move(m));
    }
    return Representation(a.group(), n, std::move(mats));
}

Representation tensor(const Representation& a, const Representation& b)
{
    std::vector<Matrix> mats;
    for (std::size_t g = 0; g < a.group()->order(); ++g)
        mats.push_back(kronecker(a(g), b(g)));
    return Representation(a.group(), a.dim() * b.dim(), std::move(mats));
}

Representation dual(const Representation& a)
{
    std::vector<Matrix> mats;
    for (std::size_t g = 0; g < a.group()->order(); ++g)
        mats.push_back(a(a.group()->inverse(g)).transpose());
    return Representation(a.group(), a.dim(), std::move(mats));
}

namespace {

void subsets_rec(std::size_t n, std::size_t s, std::size_t start, std::vector<std::size_t>& cur,
                 std::vector<std::vector<std::size_t>>& out)
{
    if (cur.size() == s) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets_rec(n, s, i + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

Representation exterior_power(const Representation& a, std::size_t s)
{
    std::vector<std::vector<std::size_t>> subsets;
    std::vector<std::size_t> cur;
    subsets_rec(a.dim(), s, 0, cur, subsets);
    const std::size_t n = subsets.size();
    std::vector<Matrix> mats;
    for (std::size_t g = 0; g < a.group()->order(); ++g) {
        Matrix m(n, n);
        for (std::size_t I = 0; I < n; ++I)
            for (std::size_t J = 0; J < n; ++J) {
                Matrix minor(s, s);
                for (std::size_t i = 0; i < s; ++i)
                    for (std::size_t j = 0; j < s; ++j)
                        minor(i, j) = a(g)(subsets[I][i], subsets[J][j]);
                m(I, J) = determinant(minor);
            }
        mats.push_back(std::move(m));
    }
    return Representation(a.group(), n, std::move(mats));
}

Representation restrict_to(const Representation& a, const Subspace& stable)
{
    std::vector<Matrix> mats;
    for (std::size_t g = 0; g < a.group()->order(); ++g) {
        auto coords = solve(stable.basis, a(g) * stable.basis);
        if (!coords)
            throw InvariantError("subspace is not stable under " + a.group()->name(g));
        mats.push_back(std::move(*coords));
    }
    return Representation(a.group(), stable.dim(), std::move(mats));
}

Representation quotient(const Representation& a, const QuotientMap& q)
{
    const Matrix proj = q.matrix();
    const Matrix lift = q.lift_matrix();
    std::vector<Matrix> mats;
    for (std::size_t g = 0; g < a.group()->order(); ++g)
        mats.push_back(proj * a(g) * lift);
    return Representation(a.group(), q.dim(), std::move(mats));
}

Matrix averaging_idempotent(const Representation& rho)
{
    Matrix e(rho.dim(), rho.dim());
    for (const auto& m : rho.matrices())
        e += m;
    e *= Rational(1, static_cast<unsigned long>(rho.group()->order()));
    return e;
}

Subspace invariants(const Representation& rho)
{
    return column_space(averaging_idempotent(rho));
}

bool is_equivariant(const Matrix& map, const Representation& source, const Representation& target)
{
    for (std::size_t g = 0; g < source.group()->order(); ++g)
        if (!(map * source(g) == target(g) * map))
            return false;
    return true;
}

Matrix maschke_split(const Matrix& p, const Representation& source, const Representation& target)
{
    if (p.rows() != target.dim() || p.cols() != source.dim())
        throw DimensionError("maschke_split: map shape does not match the representations");
    if (!is_equivariant(p, source, target))
        throw ValidationError("maschke_split: map is not equivariant");
    auto s0 = solve(p, Matrix::identity(target.dim()));
    if (!s0)
        throw ValidationError("maschke_split: map is not surjective");
    const auto& G = *source.group();
    Matrix s(source.dim(), target.dim());
    for (std::size_t g = 0; g < G.order(); ++g)
        s += source(g) * *s0 * target(G.inverse(g));
    s *= Rational(1, static_cast<unsigned long>(G.order()));
    return s;
}

std::vector<Matrix> intertwiners(const Representation& source, const Representation& target)
{
    const std::size_t m = target.dim(), n = source.dim();
    const auto& G = *source.group();
    // Image of the averaging operator f -> (1/|W|) sum rho_T(w) f rho_S(w^-1)
    // applied to the elementary matrices, as row-major vectors.
    Matrix images(m * n, m * n);
    for (std::size_t g = 0; g < G.order(); ++g) {
        const Matrix& T = target(g);
        const Matrix& S = source(G.inverse(g));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t a = 0; a < m; ++a) {
                    if (T(a, i) == 0)
                        continue;
                    for (std::size_t b = 0; b < n; ++b)
                        if (S(j, b) != 0)
                            images(a * n + b, i * n + j) += T(a, i) * S(j, b);
                }
    }
    Subspace span = column_space(images);
    std::vector<Matrix> out;
    for (std::size_t k = 0; k < span.dim(); ++k) {
        Matrix f(m, n);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < n; ++b)
                f(a, b) = span.basis(a * n + b, k);
        out.push_back(std::move(f));
    }
    return out;
}

std::optional<Matrix> find_isomorphism(const Representation& source, const Representation& target)
{
    if (source.dim() != target.dim())
        return std::nullopt;
    if (source.dim() == 0)
        return Matrix(0, 0);
    auto basis = intertwiners(source, target);
    if (basis.empty())
        return std::nullopt;
    // A generic combination of a spanning set of intertwiners is invertible
    // whenever any element of the span is; try a fixed pseudo-random sequence.
    std::mt19937 rng(20240611u);
    std::uniform_int_distribution<int> coeff(-97, 97);
    for (int attempt = 0; attempt < 24; ++attempt) {
        Matrix f(target.dim(), source.dim());
        for (std::size_t k = 0; k < basis.size(); ++k) {
            Matrix term = basis[k];
            term *= Rational(attempt == 0 ? 1 : coeff(rng));
            f += term;
        }
        if (determinant(f) != 0)
            return f;
    }
    return std::nullopt;
}

}  // namespace freeq
