#include <freeq/errors.hpp>
#include <freeq/resolution.hpp>

#include <algorithm>
#include <climits>

namespace freeq {

Rational ProjectiveComplex::rank(std::size_t s) const
{
    Rational q(static_cast<unsigned long>(terms.at(s).u_count()), static_cast<unsigned long>(ring->group()->order()));
    q.canonicalize();
    return q;
}

bool ProjectiveComplex::is_free(std::size_t s) const
{
    const auto& F = terms.at(s);
    const auto& G = *ring->group();
    if (F.u_count() % G.order() != 0)
        return false;
    // A QW-module is free iff its character vanishes off the identity.
    for (std::size_t g = 0; g < G.order(); ++g) {
        if (g == G.identity())
            continue;
        Rational tr = 0;
        for (const auto& b : F.blocks())
            for (std::size_t i = 0; i < b.rep.dim(); ++i)
                tr += b.rep(g)(i, i);
        if (tr != 0)
            return false;
    }
    return true;
}

std::vector<int> ProjectiveComplex::generator_degrees(std::size_t s) const
{
    std::vector<int> out;
    const auto& F = terms.at(s);
    for (std::size_t u = 0; u < F.u_count(); ++u)
        out.push_back(F.u_degree(u));
    return out;
}

namespace {

// Matrix of the map F_t -> target_t given by generator images, where the
// target is described by a free module and a per-degree projection
// (identity for free targets, the quotient map for presented modules).
Matrix free_map_matrix(const FreeModule& source, const std::vector<FreeElement>& images, const FreeModule& target,
                       int t, const Matrix* projection)
{
    const std::size_t n = source.dim(t);
    const std::size_t m = target.dim(t);
    Matrix out(m, n);
    for (std::size_t k = 0; k < n; ++k) {
        FreeTerm ft = source.term(t, k);
        FreeElement img = target.multiply(ft.monomial, images[ft.u]);
        Vector v = target.coords(t, img);
        out.set_column(k, v);
    }
    if (projection)
        return *projection * out;
    return out;
}

GradedModule realize_free(const FreeModule& f, int lo, int hi)
{
    Presentation p;
    p.name = "F";
    p.ring = f.ring();
    p.generators = f.blocks();
    return realize(p, lo, hi);
}

}  // namespace

RealizedComplex realize(const ProjectiveComplex& c, int lo, int hi, bool include_augmentation)
{
    RealizedComplex out;
    out.lo = lo;
    out.hi = hi;
    const bool aug = include_augmentation && c.augmented.has_value();
    out.first_index = aug ? -1 : 0;
    std::optional<Realization> mreal;
    if (aug) {
        mreal = realize_with_quotients(*c.augmented, lo, hi);
        // Trim to the common range.
        GradedModule trimmed(c.ring, lo, hi);
        trimmed.set_zero_above(true);
        for (int t = lo; t <= hi; ++t) {
            std::vector<std::string> labels;
            const std::size_t d = mreal->module.dim(t);
            for (std::size_t k = 0; k < d; ++k)
                labels.push_back(mreal->module.in_range(t) ? mreal->module.label(t, k) : "");
            trimmed.set_degree(t, d, labels);
            for (std::size_t g = 0; g < c.ring->group()->order(); ++g)
                trimmed.set_w_matrix(g, t, mreal->module.w_matrix(g, t));
            for (std::size_t i = 0; i < c.ring->rank(); ++i)
                if (t + c.ring->degree(i) >= lo)
                    trimmed.set_x_matrix(i, t, mreal->module.x_matrix(i, t));
        }
        out.modules.push_back(std::move(trimmed));
    }
    for (const auto& f : c.terms) {
        GradedModule fm = realize_free(f, lo, hi);
        GradedModule trimmed(c.ring, lo, hi);
        trimmed.set_zero_above(true);
        for (int t = lo; t <= hi; ++t) {
            std::vector<std::string> labels;
            for (std::size_t k = 0; k < fm.dim(t); ++k)
                labels.push_back(fm.in_range(t) ? fm.label(t, k) : "");
            trimmed.set_degree(t, fm.dim(t), labels);
            for (std::size_t g = 0; g < c.ring->group()->order(); ++g)
                trimmed.set_w_matrix(g, t, fm.w_matrix(g, t));
            for (std::size_t i = 0; i < c.ring->rank(); ++i)
                if (t + c.ring->degree(i) >= lo)
                    trimmed.set_x_matrix(i, t, fm.x_matrix(i, t));
        }
        out.modules.push_back(std::move(trimmed));
    }
    if (aug) {
        std::map<int, Matrix> eps;
        const FreeModule fm = c.augmented->free_module();
        for (int t = lo; t <= hi; ++t) {
            if (mreal->module.in_range(t)) {
                Matrix proj = mreal->quotient.at(t).matrix();
                eps[t] = free_map_matrix(c.terms.at(0), c.augmentation, fm, t, &proj);
            } else {
                eps[t] = Matrix(0, c.terms.at(0).dim(t));
            }
        }
        out.maps.push_back(std::move(eps));
    }
    for (std::size_t s = 1; s < c.terms.size(); ++s) {
        std::map<int, Matrix> d;
        for (int t = lo; t <= hi; ++t)
            d[t] = free_map_matrix(c.terms[s], c.differentials[s], c.terms[s - 1], t, nullptr);
        out.maps.push_back(std::move(d));
    }
    return out;
}

void check_d_squared(const RealizedComplex& c)
{
    for (std::size_t k = 0; k + 1 < c.maps.size(); ++k)
        for (int t = c.lo; t <= c.hi; ++t) {
            const Matrix prod = c.maps[k].at(t) * c.maps[k + 1].at(t);
            if (!prod.is_zero())
                throw InvariantError("d^2 != 0 at position " + std::to_string(c.first_index + static_cast<int>(k) + 2) +
                                     ", degree " + std::to_string(t));
        }
}

ExactnessReport verify_exactness(const RealizedComplex& c)
{
    check_d_squared(c);
    ExactnessReport rep;
    rep.lo = c.lo;
    rep.hi = c.hi;
    const std::size_t n = c.modules.size();
    for (std::size_t k = 0; k < n; ++k)
        for (int t = c.lo; t <= c.hi; ++t) {
            const std::size_t dim = c.modules[k].dim(t);
            // out: C_k -> C_{k-1}; in: C_{k+1} -> C_k
            Matrix d_out = k == 0 ? Matrix(0, dim) : c.maps[k - 1].at(t);
            Matrix d_in = k + 1 < n ? c.maps[k].at(t) : Matrix(dim, 0);
            const std::size_t h = homology_dim(d_out, d_in);
            if (h != 0) {
                rep.homology[{c.first_index + static_cast<int>(k), t}] = h;
                rep.exact = false;
            }
        }
    return rep;
}

bool check_equivariance(const RealizedComplex& c)
{
    for (std::size_t k = 0; k < c.maps.size(); ++k) {
        ModuleMap m{0, c.maps[k]};
        if (!m.check(c.modules[k + 1], c.modules[k]))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Koszul

namespace {

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t s)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == s) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::string subset_name(const TwistedGroupRing& R, const std::vector<std::size_t>& a)
{
    if (a.empty())
        return "1";
    std::string s;
    for (std::size_t k = 0; k < a.size(); ++k)
        s += (k ? "^" : "") + R.generators().names[a[k]];
    return s;
}

}  // namespace

ProjectiveComplex koszul_complex(const RingPtr& ring)
{
    const std::size_t r = ring->rank();
    const auto& G = *ring->group();
    const Representation reg = Representation::regular(ring->group());
    ProjectiveComplex c;
    c.ring = ring;
    c.augmented = group_ring_module(ring);
    c.differentials.push_back({});

    // Per s: the U-index of (subset index, group element).
    std::vector<std::map<std::pair<std::size_t, std::size_t>, std::size_t>> uindex(r + 1);
    std::vector<std::vector<std::vector<std::size_t>>> subsets(r + 1);
    int lowest = 0;

    for (std::size_t s = 0; s <= r; ++s) {
        subsets[s] = subsets_of_size(r, s);
        const Representation ext = exterior_power(ring->generators().action, s);
        // Group subsets by degree; the action is block diagonal by degree.
        std::map<int, std::vector<std::size_t>, std::greater<int>> by_degree;
        for (std::size_t a = 0; a < subsets[s].size(); ++a) {
            int d = 0;
            for (auto i : subsets[s][a])
                d += ring->degree(i);
            by_degree[d].push_back(a);
            lowest = std::min(lowest, d);
        }
        std::vector<GeneratorBlock> blocks;
        std::size_t next_u = 0;
        for (const auto& [deg, members] : by_degree) {
            std::vector<Matrix> mats;
            for (std::size_t g = 0; g < G.order(); ++g) {
                Matrix sub(members.size(), members.size());
                for (std::size_t i = 0; i < members.size(); ++i)
                    for (std::size_t j = 0; j < members.size(); ++j)
                        sub(i, j) = ext(g)(members[i], members[j]);
                mats.push_back(std::move(sub));
            }
            Representation piece(ring->group(), members.size(), std::move(mats));
            GeneratorBlock b;
            b.name = "K" + std::to_string(s) + "_" + std::to_string(-deg);
            b.degree = deg;
            b.rep = tensor(piece, reg);
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t g = 0; g < G.order(); ++g) {
                    const std::string sub_name = subset_name(*ring, subsets[s][members[i]]);
                    b.labels.push_back(g == G.identity() ? sub_name : G.name(g) + "." + sub_name);
                    uindex[s][{members[i], g}] = next_u++;
                }
            blocks.push_back(std::move(b));
        }
        c.terms.emplace_back(ring, std::move(blocks));
    }
    for (std::size_t s = 1; s <= r; ++s) {
        std::vector<FreeElement> images(c.terms[s].u_count());
        for (std::size_t a = 0; a < subsets[s].size(); ++a) {
            const auto& A = subsets[s][a];
            for (std::size_t g = 0; g < G.order(); ++g) {
                FreeElement img;
                for (std::size_t k = 0; k < A.size(); ++k) {
                    std::vector<std::size_t> rest = A;
                    rest.erase(rest.begin() + static_cast<long>(k));
                    const auto it = std::find(subsets[s - 1].begin(), subsets[s - 1].end(), rest);
                    const std::size_t b = static_cast<std::size_t>(it - subsets[s - 1].begin());
                    Exponents e(r, 0);
                    e[A[k]] = 1;
                    add_to(img, {uindex[s - 1].at({b, g}), e}, k % 2 == 0 ? 1 : -1);
                }
                images[uindex[s].at({a, g})] = std::move(img);
            }
        }
        c.differentials.push_back(std::move(images));
    }
    // F_0 = R (x) QW -> QW sends the generator g to g.
    for (std::size_t g = 0; g < G.order(); ++g) {
        FreeElement e;
        add_to(e, {g, Exponents(r, 0)}, 1);
        c.augmentation.push_back(std::move(e));
    }
    c.lo = lowest;
    return c;
}

// ---------------------------------------------------------------------------
// Minimal resolution

namespace {

/*
 * Minimal generators of a graded submodule Z of a realized module whose
 * degree-t pieces are given by basis columns z[t] (in the ambient
 * coordinates of `amb`). Returns blocks of generators with their images as
 * ambient coordinate vectors.
 */
struct MinimalGenerators {
    std::vector<GeneratorBlock> blocks;
    std::vector<std::pair<int, Matrix>> images;  // per block: degree, ambient columns
};

MinimalGenerators minimal_generators(const RingPtr& R, const std::map<int, Matrix>& z,
                                     const std::function<Matrix(std::size_t, int)>& x_matrix,
                                     const std::function<Matrix(std::size_t, int)>& w_matrix,
                                     const std::string& prefix)
{
    MinimalGenerators out;
    const auto& G = *R->group();
    for (auto it = z.rbegin(); it != z.rend(); ++it) {
        const int t = it->first;
        const Matrix& basis = it->second;
        if (basis.cols() == 0)
            continue;
        // (m Z)_t in coordinates of the basis of Z_t.
        Matrix mz(basis.cols(), 0);
        for (std::size_t i = 0; i < R->rank(); ++i) {
            const int src = t - R->degree(i);
            auto sit = z.find(src);
            if (sit == z.end() || sit->second.cols() == 0)
                continue;
            auto coords = solve(basis, x_matrix(i, src) * sit->second);
            if (!coords)
                throw InvariantError("syzygy module is not closed under x_" + std::to_string(i));
            mz = mz.hstack(*coords);
        }
        QuotientMap q(basis.cols(), mz);
        if (q.dim() == 0)
            continue;
        std::vector<Matrix> mats;
        for (std::size_t g = 0; g < G.order(); ++g) {
            auto coords = solve(basis, w_matrix(g, t) * basis);
            if (!coords)
                throw InvariantError("syzygy module is not W-stable in degree " + std::to_string(t));
            mats.push_back(std::move(*coords));
        }
        Representation zrep(R->group(), basis.cols(), std::move(mats));
        Representation qrep = quotient(zrep, q);
        Matrix section = maschke_split(q.matrix(), zrep, qrep);
        GeneratorBlock b;
        b.name = prefix + "@" + std::to_string(t);
        b.degree = t;
        b.rep = qrep;
        out.blocks.push_back(std::move(b));
        out.images.emplace_back(t, basis * section);
    }
    return out;
}

}  // namespace

ProjectiveComplex minimal_free_resolution(const Presentation& m, int lo)
{
    m.validate();
    const RingPtr& R = m.ring;
    const int guard = R->max_abs_degree();
    ProjectiveComplex c;
    c.ring = R;
    c.augmented = m;
    c.lo = lo;
    c.differentials.push_back({});

    const int top = m.top_degree();
    if (top == INT_MIN)
        return c;  // zero module: empty resolution
    if (m.bottom_degree() < lo + guard)
        throw WindowError("resolution: presentation of " + m.name + " reaches degree " +
                              std::to_string(m.bottom_degree()) + ", below the searched range plus guard band (" +
                              std::to_string(lo + guard) + ")",
                          m.bottom_degree() - 2 * guard, top);

    auto check_guard = [&](const MinimalGenerators& gens, std::size_t s) {
        for (const auto& b : gens.blocks)
            if (b.degree < lo + guard)
                throw WindowError("resolution: generator of F_" + std::to_string(s) + " found in degree " +
                                      std::to_string(b.degree) + ", inside the guard band of the searched range [" +
                                      std::to_string(lo) + ", " + std::to_string(top) + "]; extend the window down",
                                  lo - 2 * guard, top);
    };

    // Step 0: minimal generators of M itself.
    Realization mr = realize_with_quotients(m, lo, top);
    std::map<int, Matrix> whole;
    for (int t = lo; t <= top; ++t)
        whole[t] = Matrix::identity(mr.module.dim(t));
    MinimalGenerators g0 = minimal_generators(
        R, whole, [&](std::size_t i, int t) { return mr.module.x_matrix(i, t); },
        [&](std::size_t g, int t) { return mr.module.w_matrix(g, t); }, "F0");
    check_guard(g0, 0);
    FreeModule F0(R, g0.blocks);
    for (std::size_t b = 0; b < g0.blocks.size(); ++b) {
        const auto& [t, cols] = g0.images[b];
        const Matrix lift = mr.quotient.at(t).lift_matrix();
        for (std::size_t k = 0; k < cols.cols(); ++k)
            c.augmentation.push_back(mr.free.element(t, lift * cols.column(k)));
    }
    c.terms.push_back(F0);

    // Kernel of F_0 -> M.
    std::map<int, Matrix> kernel;
    for (int t = lo; t <= top; ++t) {
        Matrix proj = mr.quotient.at(t).matrix();
        Matrix eps = free_map_matrix(F0, c.augmentation, mr.free, t, &proj);
        kernel[t] = kernel_basis(eps).basis;
    }

    for (std::size_t s = 1;; ++s) {
        const FreeModule& prev = c.terms.back();
        bool nonzero = std::any_of(kernel.begin(), kernel.end(), [](const auto& kv) { return kv.second.cols() > 0; });
        if (!nonzero)
            break;
        if (s > R->rank())
            throw InvariantError("resolution does not terminate by step r = " + std::to_string(R->rank()) +
                                 " (global dimension of R[W])");
        MinimalGenerators gs = minimal_generators(
            R, kernel, [&](std::size_t i, int t) { return prev.x_matrix(i, t); },
            [&](std::size_t g, int t) { return prev.w_matrix(g, t); }, "F" + std::to_string(s));
        check_guard(gs, s);
        FreeModule Fs(R, gs.blocks);
        std::vector<FreeElement> images;
        for (const auto& [t, cols] : gs.images)
            for (std::size_t k = 0; k < cols.cols(); ++k)
                images.push_back(prev.element(t, cols.column(k)));
        std::map<int, Matrix> next;
        for (int t = lo; t <= top; ++t) {
            Matrix d = free_map_matrix(Fs, images, prev, t, nullptr);
            next[t] = kernel_basis(d).basis;
        }
        c.terms.push_back(std::move(Fs));
        c.differentials.push_back(std::move(images));
        kernel = std::move(next);
    }
    return c;
}

ProjectiveComplex minimal_free_resolution(const Presentation& m, const DegreeWindow& window)
{
    window.validate();
    return minimal_free_resolution(m, window.lo());
}

bool is_minimal(const ProjectiveComplex& c)
{
    for (std::size_t s = 1; s < c.differentials.size(); ++s)
        for (const auto& img : c.differentials[s])
            for (const auto& [term, coeff] : img)
                if (std::all_of(term.monomial.begin(), term.monomial.end(), [](unsigned e) { return e == 0; }))
                    return false;
    return true;
}

RealizedComplex dual_complex(const RealizedComplex& c)
{
    RealizedComplex out;
    const std::size_t n = c.modules.size();
    out.lo = -c.hi;
    out.hi = -c.lo;
    out.first_index = 0;
    for (std::size_t j = 0; j < n; ++j)
        out.modules.push_back(dual(c.modules[n - 1 - j]));
    // Original maps[k] : C_{k+1} -> C_k; dual goes E_{n-1-k-1}... reindexed so
    // out.maps[j] : E_{j+1} -> E_j is the transpose of maps[n-2-j].
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const auto& orig = c.maps[n - 2 - j];
        std::map<int, Matrix> d;
        for (int t = out.lo; t <= out.hi; ++t)
            d[t] = orig.at(-t).transpose();
        out.maps.push_back(std::move(d));
    }
    return out;
}

RealizedComplex dual_injective_complex(const ProjectiveComplex& k, int lo, int hi)
{
    return dual_complex(realize(k, lo, hi, true));
}

}  // namespace freeq
