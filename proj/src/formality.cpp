#include <freeq/errors.hpp>
#include <freeq/formality.hpp>

#include <algorithm>
#include <cstdlib>
#include <set>

namespace freeq {

EquivariantDGA::EquivariantDGA(GroupPtr group, int cutoff) : m_group(std::move(group)), m_cutoff(cutoff)
{
    if (cutoff < 0)
        throw ValidationError("dga cutoff must be nonnegative");
}

// Storage runs one degree below the cutoff so that d is known on every
// degree in [-cutoff, 0].
namespace {
int floor_of(int cutoff)
{
    return -cutoff - 1;
}
}  // namespace

void EquivariantDGA::require(int n) const
{
    if (n < floor_of(m_cutoff))
        throw WindowError("dga: degree " + std::to_string(n) + " is below the cutoff " + std::to_string(-m_cutoff),
                          n, 0);
}

std::size_t EquivariantDGA::dim(int n) const
{
    if (n > 0)
        return 0;
    require(n);
    auto it = m_labels.find(n);
    return it == m_labels.end() ? 0 : it->second.size();
}

const std::string& EquivariantDGA::label(int n, std::size_t k) const
{
    require(n);
    return m_labels.at(n).at(k);
}

std::vector<std::string> EquivariantDGA::labels(int n) const
{
    if (n > 0)
        return {};
    require(n);
    auto it = m_labels.find(n);
    return it == m_labels.end() ? std::vector<std::string>{} : it->second;
}

std::optional<std::pair<int, std::size_t>> EquivariantDGA::find(const std::string& label) const
{
    for (const auto& [n, ls] : m_labels)
        for (std::size_t k = 0; k < ls.size(); ++k)
            if (ls[k] == label)
                return std::make_pair(n, k);
    return std::nullopt;
}

Matrix EquivariantDGA::differential(int n) const
{
    if (n > 0)
        return Matrix(dim(n - 1), 0);
    if (n - 1 < floor_of(m_cutoff))
        throw WindowError("dga: differential out of degree " + std::to_string(n) + " leaves the stored range", n - 1,
                          0);
    auto it = m_d.find(n);
    return it == m_d.end() ? Matrix(dim(n - 1), dim(n)) : it->second;
}

Matrix EquivariantDGA::action(std::size_t g, int n) const
{
    auto it = m_w.find({g, n});
    return it == m_w.end() ? Matrix::identity(dim(n)) : it->second;
}

Representation EquivariantDGA::rep(int n) const
{
    std::vector<Matrix> mats;
    for (std::size_t g = 0; g < m_group->order(); ++g)
        mats.push_back(action(g, n));
    return Representation(m_group, dim(n), std::move(mats));
}

Matrix EquivariantDGA::product(int n, int m) const
{
    auto it = m_mul.find({n, m});
    if (it != m_mul.end())
        return it->second;
    return Matrix(dim(n + m), dim(n) * dim(m));
}

Vector EquivariantDGA::multiply(int n, const Vector& a, int m, const Vector& b) const
{
    const Matrix p = product(n, m);
    Vector ab(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            ab[i * b.size() + j] = a[i] * b[j];
    return p * ab;
}

void EquivariantDGA::set_degree(int n, std::vector<std::string> labels)
{
    if (n > 0)
        throw ValidationError("dga: degree " + std::to_string(n) + " is positive");
    require(n);
    m_labels[n] = std::move(labels);
}

void EquivariantDGA::set_differential(int n, Matrix d)
{
    if (d.rows() != dim(n - 1) || d.cols() != dim(n))
        throw ValidationError("dga: differential out of degree " + std::to_string(n) + " has the wrong shape");
    m_d[n] = std::move(d);
}

void EquivariantDGA::set_action(std::size_t g, int n, Matrix a)
{
    if (a.rows() != dim(n) || a.cols() != dim(n))
        throw ValidationError("dga: action matrix in degree " + std::to_string(n) + " has the wrong shape");
    m_w[{g, n}] = std::move(a);
}

void EquivariantDGA::set_product(int n, int m, Matrix p)
{
    if (p.rows() != dim(n + m) || p.cols() != dim(n) * dim(m))
        throw ValidationError("dga: product table for degrees " + std::to_string(n) + ", " + std::to_string(m) +
                              " has the wrong shape");
    m_mul[{n, m}] = std::move(p);
}

void EquivariantDGA::fill_defaults()
{
    const int lo = floor_of(m_cutoff);
    if (dim(0) != 1)
        throw ValidationError("dga: degree 0 must be spanned by the unit");
    for (int n = lo; n <= 0; ++n) {
        if (!m_labels.count(n))
            m_labels[n] = {};
        // Unit products.
        const std::size_t d = dim(n);
        m_mul[{0, n}] = Matrix::identity(d);
        m_mul[{n, 0}] = Matrix::identity(d);
    }
}

void EquivariantDGA::validate() const
{
    const int lo = floor_of(m_cutoff);
    const auto& G = *m_group;
    if (dim(0) != 1)
        throw ValidationError("dga: degree 0 must be spanned by the unit");
    auto where = [](int n) { return " in degree " + std::to_string(n); };
    for (int n = lo; n <= 0; ++n) {
        Representation r = rep(n);
        try {
            r.validate();
        } catch (const ValidationError& e) {
            throw ValidationError(std::string("dga: action is not a representation") + where(n) + ": " + e.what());
        }
        if (n - 1 >= lo) {
            const Matrix d = differential(n);
            for (std::size_t g = 0; g < G.order(); ++g)
                if (!(action(g, n - 1) * d == d * action(g, n)))
                    throw ValidationError("dga: differential is not equivariant" + where(n));
            if (n - 2 >= lo && !(differential(n - 1) * d).is_zero())
                throw ValidationError("dga: d^2 != 0" + where(n));
        }
    }
    for (int n = lo; n <= 0; ++n)
        for (int m = lo - n; m <= 0; ++m) {
            const std::size_t dn = dim(n), dm = dim(m);
            if (dn == 0 || dm == 0)
                continue;
            const Matrix p = product(n, m);
            const Matrix q = product(m, n);
            const Rational sign = (std::abs(n) % 2 == 1 && std::abs(m) % 2 == 1) ? -1 : 1;
            for (std::size_t i = 0; i < dn; ++i)
                for (std::size_t j = 0; j < dm; ++j)
                    for (std::size_t k = 0; k < p.rows(); ++k)
                        if (p(k, i * dm + j) != sign * q(k, j * dn + i))
                            throw ValidationError("dga: product of " + label(n, i) + " and " + label(m, j) +
                                                  " is not graded commutative");
            for (std::size_t g = 0; g < G.order(); ++g)
                if (!(action(g, n + m) * p == p * kronecker(action(g, n), action(g, m))))
                    throw ValidationError("dga: product is not equivariant in degrees " + std::to_string(n) + ", " +
                                          std::to_string(m));
            // Leibniz: d(ab) = d(a) b + (-1)^|a| a d(b).
            if (n + m - 1 >= lo) {
                const Matrix lhs = differential(n + m) * p;
                Matrix rhs = product(n - 1, m) * kronecker(differential(n), Matrix::identity(dm));
                Matrix second = product(n, m - 1) * kronecker(Matrix::identity(dn), differential(m));
                if (std::abs(n) % 2 == 1)
                    second *= Rational(-1);
                rhs += second;
                if (!(lhs == rhs))
                    throw ValidationError("dga: Leibniz rule fails in degrees " + std::to_string(n) + ", " +
                                          std::to_string(m));
            }
            // Associativity against every third factor that stays in range.
            for (int k = lo - n - m; k <= 0; ++k) {
                const std::size_t dk = dim(k);
                if (dk == 0)
                    continue;
                const Matrix left = product(n + m, k) * kronecker(p, Matrix::identity(dk));
                const Matrix right = product(n, m + k) * kronecker(Matrix::identity(dn), product(m, k));
                if (!(left == right))
                    throw ValidationError("dga: product is not associative in degrees " + std::to_string(n) + ", " +
                                          std::to_string(m) + ", " + std::to_string(k));
            }
        }
}

// ---------------------------------------------------------------------------
// Free graded-commutative algebras

namespace {

using SuperPoly = std::map<Exponents, Rational>;

struct SuperAlgebra {
    std::vector<int> degrees;

    bool odd(std::size_t i) const { return std::abs(degrees[i]) % 2 == 1; }

    int degree(const Exponents& e) const
    {
        int d = 0;
        for (std::size_t i = 0; i < e.size(); ++i)
            d += static_cast<int>(e[i]) * degrees[i];
        return d;
    }

    // Product of normally ordered monomials; sign from reordering odd factors.
    std::optional<std::pair<Exponents, int>> mul(const Exponents& a, const Exponents& b) const
    {
        Exponents e(a.size());
        int swaps = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            e[i] = a[i] + b[i];
            if (odd(i) && e[i] > 1)
                return std::nullopt;
        }
        for (std::size_t j = 0; j < b.size(); ++j)
            if (odd(j) && b[j])
                for (std::size_t i = j + 1; i < a.size(); ++i)
                    if (odd(i) && a[i])
                        ++swaps;
        return std::make_pair(e, swaps % 2 ? -1 : 1);
    }

    SuperPoly mul(const SuperPoly& p, const SuperPoly& q) const
    {
        SuperPoly out;
        for (const auto& [a, ca] : p)
            for (const auto& [b, cb] : q)
                if (auto m = mul(a, b)) {
                    Rational& slot = out[m->first];
                    slot += ca * cb * m->second;
                    if (slot == 0)
                        out.erase(m->first);
                }
        return out;
    }

    SuperPoly unit() const { return {{Exponents(degrees.size(), 0), Rational(1)}}; }

    SuperPoly gen(std::size_t i) const
    {
        Exponents e(degrees.size(), 0);
        e[i] = 1;
        return {{e, Rational(1)}};
    }

    std::vector<std::size_t> factors(const Exponents& e) const
    {
        std::vector<std::size_t> f;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned k = 0; k < e[i]; ++k)
                f.push_back(i);
        return f;
    }

    // Degree -1 derivation determined by its values on generators.
    SuperPoly derive(const Exponents& e, const std::vector<SuperPoly>& dgen) const
    {
        const auto f = factors(e);
        SuperPoly out;
        int passed = 0;
        for (std::size_t j = 0; j < f.size(); ++j) {
            SuperPoly term = unit();
            for (std::size_t l = 0; l < f.size(); ++l)
                term = mul(term, l == j ? dgen[f[l]] : gen(f[l]));
            const Rational sign = passed % 2 ? -1 : 1;
            for (const auto& [m, c] : term) {
                Rational& slot = out[m];
                slot += sign * c;
                if (slot == 0)
                    out.erase(m);
            }
            passed += std::abs(degrees[f[j]]);
        }
        return out;
    }

    SuperPoly apply(const Exponents& e, const std::vector<SuperPoly>& images) const
    {
        SuperPoly term = unit();
        for (std::size_t i : factors(e))
            term = mul(term, images[i]);
        return term;
    }

    std::vector<Exponents> monomials(int n) const
    {
        std::vector<Exponents> out;
        Exponents cur(degrees.size(), 0);
        auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
            if (i == degrees.size()) {
                if (remaining == 0)
                    out.push_back(cur);
                return;
            }
            const int step = -degrees[i];
            int kmax = remaining / -step;
            if (odd(i))
                kmax = std::min(kmax, 1);
            for (int k = kmax; k >= 0; --k) {
                cur[i] = static_cast<unsigned>(k);
                self(self, i + 1, remaining + k * step);
            }
            cur[i] = 0;
        };
        rec(rec, 0, n);
        return out;
    }
};

std::string monomial_label(const std::vector<std::string>& names, const Exponents& e)
{
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += names[i];
        if (e[i] > 1)
            s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

}  // namespace

EquivariantDGA free_cdga(const FreeCdgaSpec& spec)
{
    const std::size_t k = spec.names.size();
    if (!spec.group)
        throw ValidationError("dga needs a group");
    if (spec.degrees.size() != k)
        throw ValidationError("dga generator names and degrees differ in length");
    if (std::set<std::string>(spec.names.begin(), spec.names.end()).size() != k)
        throw ValidationError("dga generator names are not distinct");
    for (std::size_t i = 0; i < k; ++i)
        if (spec.degrees[i] >= 0)
            throw ValidationError("dga generator " + spec.names[i] + " has degree " +
                                  std::to_string(spec.degrees[i]) + "; generators must have negative degree");
    Representation act = spec.action.group() ? spec.action : Representation::trivial(spec.group, k);
    if (act.dim() != k)
        throw ValidationError("dga action has dimension " + std::to_string(act.dim()) + ", expected " +
                              std::to_string(k));
    act.validate();
    const auto& G = *spec.group;
    for (std::size_t g = 0; g < G.order(); ++g)
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (act(g)(i, j) != 0 && spec.degrees[i] != spec.degrees[j])
                    throw ValidationError("dga action of " + G.name(g) + " mixes generators of different degrees");

    SuperAlgebra alg{spec.degrees};
    std::vector<SuperPoly> dgen(k);
    for (const auto& [i, poly] : spec.differential) {
        if (i >= k)
            throw ValidationError("dga differential names an unknown generator");
        for (const auto& [e, c] : poly) {
            if (e.size() != k)
                throw ValidationError("dga differential of " + spec.names[i] + " has a malformed term");
            for (std::size_t j = 0; j < k; ++j)
                if (alg.odd(j) && e[j] > 1)
                    throw ValidationError("dga differential of " + spec.names[i] + " squares the odd generator " +
                                          spec.names[j]);
            if (alg.degree(e) != spec.degrees[i] - 1)
                throw ValidationError("dga differential of " + spec.names[i] + " has a term of degree " +
                                      std::to_string(alg.degree(e)) + ", expected " +
                                      std::to_string(spec.degrees[i] - 1));
            if (c != 0)
                dgen[i][e] += c;
        }
    }
    std::vector<std::vector<SuperPoly>> wgen(G.order(), std::vector<SuperPoly>(k));
    for (std::size_t g = 0; g < G.order(); ++g)
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (act(g)(j, i) != 0) {
                    Exponents e(k, 0);
                    e[j] = 1;
                    wgen[g][i][e] = act(g)(j, i);
                }

    EquivariantDGA c(spec.group, spec.cutoff);
    const int lo = floor_of(spec.cutoff);
    std::map<int, std::vector<Exponents>> basis;
    std::map<int, std::map<Exponents, std::size_t>> index;
    for (int n = lo; n <= 0; ++n) {
        basis[n] = alg.monomials(n);
        std::vector<std::string> labels;
        for (std::size_t a = 0; a < basis[n].size(); ++a) {
            index[n][basis[n][a]] = a;
            labels.push_back(monomial_label(spec.names, basis[n][a]));
        }
        c.set_degree(n, std::move(labels));
    }
    auto coords = [&](int n, const SuperPoly& p) {
        Vector v(basis[n].size());
        for (const auto& [e, coeff] : p)
            v[index[n].at(e)] = coeff;
        return v;
    };
    for (int n = lo; n <= 0; ++n) {
        const auto& b = basis[n];
        if (n - 1 >= lo) {
            Matrix d(basis[n - 1].size(), b.size());
            for (std::size_t a = 0; a < b.size(); ++a)
                d.set_column(a, coords(n - 1, alg.derive(b[a], dgen)));
            c.set_differential(n, std::move(d));
        }
        for (std::size_t g = 0; g < G.order(); ++g) {
            Matrix w(b.size(), b.size());
            for (std::size_t a = 0; a < b.size(); ++a)
                w.set_column(a, coords(n, alg.apply(b[a], wgen[g])));
            c.set_action(g, n, std::move(w));
        }
    }
    for (int n = lo; n <= 0; ++n)
        for (int m = lo - n; m <= 0; ++m) {
            const auto& bn = basis[n];
            const auto& bm = basis[m];
            Matrix p(basis[n + m].size(), bn.size() * bm.size());
            for (std::size_t i = 0; i < bn.size(); ++i)
                for (std::size_t j = 0; j < bm.size(); ++j)
                    if (auto prod = alg.mul(bn[i], bm[j]))
                        p(index[n + m].at(prod->first), i * bm.size() + j) = prod->second;
            c.set_product(n, m, std::move(p));
        }
    c.validate();
    return c;
}

EquivariantDGA symmetric_algebra(const GeneratorSpace& v, GroupPtr group, int cutoff)
{
    FreeCdgaSpec spec;
    spec.group = std::move(group);
    spec.names = v.names;
    spec.degrees = v.degrees;
    spec.action = v.action;
    spec.cutoff = cutoff;
    return free_cdga(spec);
}

// ---------------------------------------------------------------------------
// Cycles and homology

Subspace cycles(const EquivariantDGA& c, int n)
{
    if (n > 0)
        return Subspace::zero(0);
    if (n < -c.cutoff())
        throw WindowError("dga: degree " + std::to_string(n) + " is outside the cutoff " +
                              std::to_string(-c.cutoff()),
                          n, 0);
    return kernel_basis(c.differential(n));
}

DgaHomology homology(const EquivariantDGA& c, int n)
{
    DgaHomology h;
    h.n = n;
    Subspace z = cycles(c, n);
    h.cycles = z.basis;
    const Matrix in = c.differential(n + 1);
    auto bcoords = solve(z.basis, in);
    if (!bcoords)
        throw InvariantError("dga: boundaries are not cycles in degree " + std::to_string(n));
    h.quotient = QuotientMap(z.dim(), *bcoords);
    h.dim = h.quotient.dim();
    h.representatives = z.basis * h.quotient.lift_matrix();
    for (std::size_t g = 0; g < c.group()->order(); ++g) {
        auto zc = solve(z.basis, c.action(g, n) * z.basis);
        if (!zc)
            throw InvariantError("dga: cycles are not W-stable in degree " + std::to_string(n));
        h.action.push_back(h.quotient.matrix() * *zc * h.quotient.lift_matrix());
    }
    return h;
}

// ---------------------------------------------------------------------------
// Formality map

namespace {

void check_generator_space(const EquivariantDGA& c, const GeneratorSpace& v)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.degrees[i] == 0)
            throw ValidationError("V has a degree-0 part (" + v.names[i] +
                                  "); the construction starts from the zero map in degree 0 and needs V in "
                                  "negative degrees");
    if (v.action.group() && !(*v.action.group() == *c.group()))
        throw ValidationError("V and the dga carry different groups");
}

Vector unit_vector()
{
    return Vector{Rational(1)};
}

}  // namespace

FormalityMap assemble_formality_map(const EquivariantDGA& c, const GeneratorSpace& v,
                                    const std::vector<Vector>& assignment)
{
    check_generator_space(c, v);
    if (assignment.size() != v.size())
        throw ValidationError("assignment has " + std::to_string(assignment.size()) + " images for " +
                              std::to_string(v.size()) + " generators");
    for (std::size_t i = 0; i < v.size(); ++i)
        if (assignment[i].size() != c.dim(v.degrees[i]))
            throw ValidationError("image of " + v.names[i] + " has the wrong length");
    FormalityMap f;
    f.symm = build_ring(v, c.group());
    f.assignment = assignment;
    for (int n = -c.cutoff(); n <= 0; ++n) {
        const auto& mons = f.symm->monomials(n);
        Matrix m(c.dim(n), mons.size());
        for (std::size_t a = 0; a < mons.size(); ++a) {
            Vector img = unit_vector();
            int deg = 0;
            for (std::size_t i = 0; i < v.size(); ++i)
                for (unsigned k = 0; k < mons[a][i]; ++k) {
                    img = c.multiply(deg, img, v.degrees[i], assignment[i]);
                    deg += v.degrees[i];
                }
            m.set_column(a, img);
        }
        f.matrices[n] = std::move(m);
    }
    return f;
}

FormalityMap build_formality_map(const EquivariantDGA& c, const GeneratorSpace& v)
{
    check_generator_space(c, v);
    RingPtr symm = build_ring(v, c.group());
    const auto& gens = symm->generators();
    int max_abs = 0;
    for (int d : gens.degrees)
        max_abs = std::max(max_abs, std::abs(d));
    if (c.cutoff() < 2 * max_abs)
        throw WindowError("formality: cutoff " + std::to_string(c.cutoff()) + " is below 2 max|deg V| = " +
                              std::to_string(2 * max_abs),
                          -2 * max_abs, 0);

    std::map<int, DgaHomology> hom;
    auto get_h = [&](int n) -> const DgaHomology& {
        auto it = hom.find(n);
        if (it == hom.end())
            it = hom.emplace(n, homology(c, n)).first;
        return it->second;
    };

    std::vector<Vector> assignment(v.size());
    std::set<int, std::greater<int>> degrees(gens.degrees.begin(), gens.degrees.end());
    for (int n : degrees) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (gens.degrees[i] == n)
                idx.push_back(i);
        std::vector<Matrix> vm;
        for (std::size_t g = 0; g < c.group()->order(); ++g) {
            Matrix sub(idx.size(), idx.size());
            for (std::size_t a = 0; a < idx.size(); ++a)
                for (std::size_t b = 0; b < idx.size(); ++b)
                    sub(a, b) = gens.action(g)(idx[a], idx[b]);
            vm.push_back(std::move(sub));
        }
        Representation vrep(c.group(), idx.size(), std::move(vm));

        const DgaHomology& h = get_h(n);
        // Decomposables: products of classes of lower codegree.
        Matrix dec(h.dim, 0);
        for (int n1 = n + 1; n1 < 0; ++n1) {
            const int n2 = n - n1;
            if (n2 < n1)
                break;
            const DgaHomology& h1 = get_h(n1);
            const DgaHomology& h2 = get_h(n2);
            for (std::size_t a = 0; a < h1.dim; ++a)
                for (std::size_t b = 0; b < h2.dim; ++b) {
                    Vector prod = c.multiply(n1, h1.representatives.column(a), n2, h2.representatives.column(b));
                    auto zc = solve(h.cycles, prod);
                    if (!zc)
                        throw InvariantError("formality: product of cycles is not a cycle in degree " +
                                             std::to_string(n));
                    dec = dec.hstack(Matrix::from_columns(h.dim, {h.quotient.project(*zc)}));
                }
        }
        // Kernel of Z_n -> H_n / decomposables, in Z coordinates.
        const Matrix in = c.differential(n + 1);
        Matrix kernel = *solve(h.cycles, in);
        kernel = kernel.hstack(h.quotient.lift_matrix() * dec);
        QuotientMap qz(h.cycles.cols(), kernel);
        if (qz.dim() != idx.size())
            throw ValidationError("formality: homology is not polynomial on V in degree " + std::to_string(n) +
                                  ": indecomposables have dimension " + std::to_string(qz.dim()) + ", V has " +
                                  std::to_string(idx.size()));
        std::vector<Matrix> zm;
        for (std::size_t g = 0; g < c.group()->order(); ++g)
            zm.push_back(*solve(h.cycles, c.action(g, n) * h.cycles));
        Representation zrep(c.group(), h.cycles.cols(), std::move(zm));
        Representation qrep = quotient(zrep, qz);
        auto phi = find_isomorphism(vrep, qrep);
        if (!phi)
            throw ValidationError("formality: indecomposables in degree " + std::to_string(n) +
                                  " are not isomorphic to V as W-representations");
        const Matrix section = maschke_split(qz.matrix(), zrep, qrep);
        const Matrix images = h.cycles * section * *phi;
        for (std::size_t a = 0; a < idx.size(); ++a)
            assignment[idx[a]] = images.column(a);
    }
    return assemble_formality_map(c, v, assignment);
}

QuasiIsoReport verify_quasi_iso(const EquivariantDGA& c, const FormalityMap& f, int cutoff)
{
    if (cutoff > c.cutoff())
        throw WindowError("verify_quasi_iso: cutoff " + std::to_string(cutoff) + " exceeds the dga cutoff " +
                              std::to_string(c.cutoff()),
                          -cutoff, 0);
    QuasiIsoReport rep;
    const auto& gens = f.symm->generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const int n = gens.degrees[i];
        if (n < -c.cutoff())
            continue;
        if (!is_zero(c.differential(n) * f.assignment[i]))
            rep.assignment_in_cycles = false;
        for (std::size_t g = 0; g < c.group()->order(); ++g) {
            Vector expected(c.dim(n));
            for (std::size_t k = 0; k < gens.size(); ++k) {
                const Rational& a = gens.action(g)(k, i);
                if (a == 0)
                    continue;
                for (std::size_t j = 0; j < expected.size(); ++j)
                    expected[j] += a * f.assignment[k][j];
            }
            if (c.action(g, n) * f.assignment[i] != expected)
                rep.assignment_equivariant = false;
        }
    }
    rep.pass = rep.assignment_in_cycles && rep.assignment_equivariant;
    for (int n = 0; n >= -cutoff; --n) {
        QuasiIsoDegree d;
        d.n = n;
        const Matrix& m = f.matrices.at(n);
        d.symm_dim = m.cols();
        const DgaHomology h = homology(c, n);
        d.homology_dim = h.dim;
        d.lands_in_cycles = (c.differential(n) * m).is_zero();
        if (d.lands_in_cycles) {
            auto zc = solve(h.cycles, m);
            d.rank = zc ? rank(h.quotient.matrix() * *zc) : 0;
        }
        d.pass = d.lands_in_cycles && d.symm_dim == d.homology_dim && d.rank == d.homology_dim;
        rep.pass = rep.pass && d.pass;
        rep.degrees.push_back(d);
    }
    return rep;
}

}  // namespace freeq
