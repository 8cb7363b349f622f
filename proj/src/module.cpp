#include <freeq/errors.hpp>
#include <freeq/module.hpp>

#include <algorithm>
#include <climits>
#include <functional>

namespace freeq {

void DegreeWindow::validate() const
{
    if (t_min > t_max)
        throw ValidationError("window has t_min > t_max (" + std::to_string(t_min) + " > " + std::to_string(t_max) +
                              ")");
    if (margin < 0)
        throw ValidationError("window margin must be non-negative");
}

GeneratorBlock free_generator(const std::string& name, int degree, GroupPtr group)
{
    GeneratorBlock b;
    b.name = name;
    b.degree = degree;
    for (std::size_t g = 0; g < group->order(); ++g)
        b.labels.push_back(g == group->identity() ? name : group->name(g) + "." + name);
    b.rep = Representation::regular(std::move(group));
    return b;
}

void add_to(FreeElement& x, const FreeTerm& t, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = x.emplace(t, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            x.erase(it);
    }
}

// ---------------------------------------------------------------------------
// FreeModule

FreeModule::FreeModule(RingPtr ring, std::vector<GeneratorBlock> blocks)
    : m_ring(std::move(ring)), m_blocks(std::move(blocks))
{
    for (std::size_t b = 0; b < m_blocks.size(); ++b) {
        auto& blk = m_blocks[b];
        m_block_offset.push_back(m_u_block.size());
        const std::size_t k = blk.rep.dim();
        if (blk.labels.size() != k) {
            blk.labels.clear();
            for (std::size_t i = 0; i < k; ++i)
                blk.labels.push_back(k == 1 ? blk.name : blk.name + "[" + std::to_string(i) + "]");
        }
        for (std::size_t i = 0; i < k; ++i) {
            m_u_block.push_back(b);
            m_u_label.push_back(blk.labels[i]);
        }
    }
}

int FreeModule::top_degree() const
{
    int top = INT_MIN;
    for (const auto& b : m_blocks)
        if (b.rep.dim() > 0)
            top = std::max(top, b.degree);
    return top;
}

Representation FreeModule::u_rep() const
{
    Representation rep(m_ring->group(), 0, std::vector<Matrix>(m_ring->group()->order(), Matrix(0, 0)));
    for (const auto& b : m_blocks)
        rep = direct_sum(rep, b.rep);
    return rep;
}

std::size_t FreeModule::dim(int t) const
{
    std::size_t d = 0;
    for (std::size_t u = 0; u < u_count(); ++u)
        d += m_ring->dim(t - u_degree(u));
    return d;
}

std::size_t FreeModule::index(int t, const FreeTerm& term) const
{
    std::size_t off = 0;
    for (std::size_t u = 0; u < term.u; ++u)
        off += m_ring->dim(t - u_degree(u));
    const int mdeg = t - u_degree(term.u);
    if (m_ring->degree(term.monomial) != mdeg)
        throw InvariantError("free term " + m_ring->monomial_string(term.monomial) + "*" + m_u_label[term.u] +
                             " is not in degree " + std::to_string(t));
    return off + m_ring->monomial_index(mdeg, term.monomial);
}

FreeTerm FreeModule::term(int t, std::size_t k) const
{
    for (std::size_t u = 0; u < u_count(); ++u) {
        const auto& mons = m_ring->monomials(t - u_degree(u));
        if (k < mons.size())
            return {u, mons[k]};
        k -= mons.size();
    }
    throw DimensionError("free module index out of range in degree " + std::to_string(t));
}

std::string FreeModule::label(int t, std::size_t k) const
{
    FreeTerm ft = term(t, k);
    std::string mono = m_ring->monomial_string(ft.monomial);
    return mono == "1" ? m_u_label[ft.u] : mono + "*" + m_u_label[ft.u];
}

Vector FreeModule::coords(int t, const FreeElement& x) const
{
    Vector v(dim(t));
    for (const auto& [term, c] : x)
        v[index(t, term)] += c;
    return v;
}

FreeElement FreeModule::element(int t, const Vector& v) const
{
    FreeElement x;
    for (std::size_t k = 0; k < v.size(); ++k)
        if (v[k] != 0)
            add_to(x, term(t, k), v[k]);
    return x;
}

int FreeModule::degree(const FreeElement& x) const
{
    if (x.empty())
        throw ValidationError("degree of the zero element");
    std::optional<int> d;
    for (const auto& [term, c] : x) {
        if (term.u >= u_count())
            throw ValidationError("element refers to an unknown generator");
        int e = u_degree(term.u) + m_ring->degree(term.monomial);
        if (d && *d != e)
            throw ValidationError("relation is not homogeneous (degrees " + std::to_string(*d) + " and " +
                                  std::to_string(e) + ")");
        d = e;
    }
    return *d;
}

FreeElement FreeModule::multiply(const Exponents& m, const FreeElement& x) const
{
    FreeElement out;
    for (const auto& [term, c] : x) {
        FreeTerm t2 = term;
        for (std::size_t i = 0; i < m.size(); ++i)
            t2.monomial[i] += m[i];
        add_to(out, t2, c);
    }
    return out;
}

FreeElement FreeModule::act(std::size_t w, const FreeElement& x) const
{
    FreeElement out;
    for (const auto& [term, c] : x) {
        Polynomial wm = m_ring->act(w, Polynomial::monomial(term.monomial));
        const std::size_t b = m_u_block[term.u];
        const std::size_t off = m_block_offset[b];
        const Matrix& rho = m_blocks[b].rep(w);
        for (std::size_t i = 0; i < rho.rows(); ++i) {
            const Rational& r = rho(i, term.u - off);
            if (r == 0)
                continue;
            for (const auto& [e, pc] : wm.terms())
                add_to(out, {off + i, e}, c * r * pc);
        }
    }
    return out;
}

FreeElement FreeModule::ring_times(const RingElement& a, std::size_t u) const
{
    FreeElement out;
    const std::size_t b = m_u_block[u];
    const std::size_t off = m_block_offset[b];
    for (const auto& [rt, c] : a.terms()) {
        const Matrix& rho = m_blocks[b].rep(rt.group_element);
        for (std::size_t i = 0; i < rho.rows(); ++i)
            if (rho(i, u - off) != 0)
                add_to(out, {off + i, rt.monomial}, c * rho(i, u - off));
    }
    return out;
}

Matrix FreeModule::x_matrix(std::size_t i, int t) const
{
    const int t2 = t + m_ring->degree(i);
    Matrix m(dim(t2), dim(t));
    for (std::size_t k = 0; k < m.cols(); ++k) {
        FreeTerm ft = term(t, k);
        ft.monomial[i] += 1;
        m(index(t2, ft), k) = 1;
    }
    return m;
}

Matrix FreeModule::w_matrix(std::size_t g, int t) const
{
    const std::size_t n = dim(t);
    Matrix m(n, n);
    std::size_t off = 0;
    for (const auto& blk : m_blocks) {
        const int rd = t - blk.degree;
        const std::size_t rdim = m_ring->dim(rd);
        const std::size_t k = blk.rep.dim();
        if (rdim > 0 && k > 0) {
            Matrix piece = kronecker(blk.rep(g), m_ring->action_matrix(g, rd));
            for (std::size_t i = 0; i < piece.rows(); ++i)
                for (std::size_t j = 0; j < piece.cols(); ++j)
                    m(off + i, off + j) = piece(i, j);
        }
        off += k * rdim;
    }
    return m;
}

// ---------------------------------------------------------------------------
// Presentation

void Presentation::validate() const
{
    if (!ring)
        throw ValidationError("module has no ring", name);
    for (const auto& b : generators) {
        if (!b.rep.group() || !(*b.rep.group() == *ring->group()))
            throw ValidationError("generator block " + b.name + " is not a representation of the ring's group", name);
        b.rep.validate();
    }
    FreeModule f = free_module();
    for (std::size_t k = 0; k < relations.size(); ++k) {
        const auto& rel = relations[k].element;
        for (const auto& [term, c] : rel) {
            if (term.u >= f.u_count())
                throw ValidationError("relation " + std::to_string(k) + " refers to an unknown generator", name);
            if (term.monomial.size() != ring->rank())
                throw ValidationError("relation " + std::to_string(k) + " has a malformed monomial", name);
        }
        if (!rel.empty())
            f.degree(rel);
    }
}

int Presentation::bottom_degree() const
{
    FreeModule f = free_module();
    int b = INT_MAX;
    for (const auto& blk : generators)
        b = std::min(b, blk.degree);
    for (const auto& rel : relations)
        if (!rel.element.empty())
            b = std::min(b, f.degree(rel.element));
    return b;
}

int Presentation::top_degree() const
{
    return free_module().top_degree();
}

unsigned Presentation::relation_length() const
{
    unsigned len = 0;
    for (const auto& rel : relations)
        for (const auto& [term, c] : rel.element) {
            unsigned s = 0;
            for (auto e : term.monomial)
                s += e;
            len = std::max(len, s);
        }
    return len;
}

int default_margin(const Presentation& m)
{
    const int r = static_cast<int>(m.ring->rank());
    return m.ring->max_abs_degree() * r * (static_cast<int>(m.relation_length()) + 1);
}

Presentation suspend(const Presentation& m, int d)
{
    Presentation out = m;
    out.name = d == 0 ? m.name : "S^" + std::to_string(d) + " " + m.name;
    for (auto& b : out.generators)
        b.degree += d;
    return out;
}

Presentation direct_sum(const Presentation& a, const Presentation& b)
{
    Presentation out;
    out.name = a.name + " + " + b.name;
    out.ring = a.ring;
    out.generators = a.generators;
    out.generators.insert(out.generators.end(), b.generators.begin(), b.generators.end());
    out.relations = a.relations;
    std::size_t shift = a.free_module().u_count();
    for (const auto& rel : b.relations) {
        Relation r;
        for (const auto& [term, c] : rel.element)
            add_to(r.element, {term.u + shift, term.monomial}, c);
        out.relations.push_back(std::move(r));
    }
    return out;
}

Presentation free_rank_one(const RingPtr& ring, int degree)
{
    Presentation p;
    p.name = "R[W]";
    p.ring = ring;
    p.generators.push_back(free_generator("g", degree, ring->group()));
    return p;
}

Presentation group_ring_module(const RingPtr& ring, int degree)
{
    Presentation p = free_rank_one(ring, degree);
    p.name = "QW";
    for (std::size_t i = 0; i < ring->rank(); ++i) {
        Exponents e(ring->rank(), 0);
        e[i] = 1;
        Relation r;
        add_to(r.element, {ring->group()->identity(), e}, 1);
        p.relations.push_back(std::move(r));
    }
    return p;
}

Presentation trivial_module(const RingPtr& ring, int degree)
{
    Presentation p;
    p.name = "Q";
    p.ring = ring;
    GeneratorBlock b;
    b.name = "g";
    b.degree = degree;
    b.rep = Representation::trivial(ring->group(), 1);
    p.generators.push_back(std::move(b));
    for (std::size_t i = 0; i < ring->rank(); ++i) {
        Exponents e(ring->rank(), 0);
        e[i] = 1;
        Relation r;
        add_to(r.element, {0, e}, 1);
        p.relations.push_back(std::move(r));
    }
    return p;
}

// ---------------------------------------------------------------------------
// GradedModule

GradedModule::GradedModule(RingPtr ring, int lo, int hi) : m_ring(std::move(ring)), m_lo(lo), m_hi(hi)
{
    const std::size_t n = hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0;
    m_dims.assign(n, 0);
    m_labels.assign(n, {});
    m_x.assign(m_ring->rank(), std::vector<Matrix>(n));
    m_w.assign(m_ring->group()->order(), std::vector<Matrix>(n));
    for (std::size_t k = 0; k < n; ++k) {
        for (auto& w : m_w)
            w[k] = Matrix(0, 0);
    }
}

bool GradedModule::known(int t) const
{
    return in_range(t) || (t > m_hi && m_zero_above) || (t < m_lo && m_zero_below);
}

std::size_t GradedModule::dim(int t) const
{
    if (in_range(t))
        return m_dims[static_cast<std::size_t>(t - m_lo)];
    if (known(t))
        return 0;
    throw WindowError("degree " + std::to_string(t) + " lies outside the realized range [" + std::to_string(m_lo) +
                          ", " + std::to_string(m_hi) + "]",
                      std::min(t, m_lo), std::max(t, m_hi));
}

const std::string& GradedModule::label(int t, std::size_t k) const
{
    return m_labels.at(static_cast<std::size_t>(t - m_lo)).at(k);
}

Matrix GradedModule::x_matrix(std::size_t i, int t) const
{
    const int t2 = t + m_ring->degree(i);
    const std::size_t src = dim(t);
    const std::size_t dst = dim(t2);
    if (src == 0 || dst == 0)
        return Matrix(dst, src);
    return m_x[i][static_cast<std::size_t>(t - m_lo)];
}

Matrix GradedModule::monomial_matrix(const Exponents& m, int t) const
{
    Matrix acc = Matrix::identity(dim(t));
    int cur = t;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (unsigned k = 0; k < m[i]; ++k) {
            acc = x_matrix(i, cur) * acc;
            cur += m_ring->degree(i);
        }
    return acc;
}

Matrix GradedModule::w_matrix(std::size_t g, int t) const
{
    if (!in_range(t))
        return Matrix(dim(t), dim(t));
    return m_w[g][static_cast<std::size_t>(t - m_lo)];
}

Representation GradedModule::rep(int t) const
{
    std::vector<Matrix> mats;
    for (std::size_t g = 0; g < m_ring->group()->order(); ++g)
        mats.push_back(w_matrix(g, t));
    return Representation(m_ring->group(), dim(t), std::move(mats));
}

void GradedModule::set_degree(int t, std::size_t d, std::vector<std::string> labels)
{
    if (!in_range(t))
        throw DimensionError("set_degree outside the module range");
    const auto k = static_cast<std::size_t>(t - m_lo);
    m_dims[k] = d;
    if (labels.size() != d) {
        labels.clear();
        for (std::size_t i = 0; i < d; ++i)
            labels.push_back("b" + std::to_string(i));
    }
    m_labels[k] = std::move(labels);
    for (std::size_t g = 0; g < m_w.size(); ++g)
        m_w[g][k] = Matrix::identity(d);
}

void GradedModule::set_x_matrix(std::size_t i, int t, Matrix m)
{
    m_x.at(i).at(static_cast<std::size_t>(t - m_lo)) = std::move(m);
}

void GradedModule::set_w_matrix(std::size_t g, int t, Matrix m)
{
    m_w.at(g).at(static_cast<std::size_t>(t - m_lo)) = std::move(m);
}

void GradedModule::check() const
{
    const auto& G = *m_ring->group();
    const auto& A = m_ring->generators().action;
    for (int t = m_lo; t <= m_hi; ++t) {
        rep(t).validate();
        for (std::size_t i = 0; i < m_ring->rank(); ++i) {
            const int ti = t + m_ring->degree(i);
            if (!known(ti))
                continue;
            for (std::size_t j = 0; j < m_ring->rank(); ++j) {
                const int tj = t + m_ring->degree(j);
                const int tij = ti + m_ring->degree(j);
                if (!known(tj) || !known(tij))
                    continue;
                if (!(x_matrix(j, ti) * x_matrix(i, t) == x_matrix(i, tj) * x_matrix(j, t)))
                    throw InvariantError("x_" + std::to_string(i) + " and x_" + std::to_string(j) +
                                         " do not commute in degree " + std::to_string(t));
            }
            for (std::size_t g = 0; g < G.order(); ++g) {
                Matrix lhs = w_matrix(g, ti) * x_matrix(i, t);
                Matrix rhs(dim(ti), dim(t));
                for (std::size_t k = 0; k < m_ring->rank(); ++k)
                    if (A(g)(k, i) != 0) {
                        Matrix term = x_matrix(k, t) * w_matrix(g, t);
                        term *= A(g)(k, i);
                        rhs += term;
                    }
                if (!(lhs == rhs))
                    throw InvariantError("twisted relation w x = w(x) w fails in degree " + std::to_string(t));
            }
        }
    }
}

std::vector<int> GradedModule::support() const
{
    std::vector<int> s;
    for (int t = m_lo; t <= m_hi; ++t)
        if (dim(t) > 0)
            s.push_back(t);
    return s;
}

// ---------------------------------------------------------------------------
// Realization

Realization realize_with_quotients(const Presentation& p, int lo, int hi)
{
    p.validate();
    Realization out;
    out.free = p.free_module();
    const FreeModule& F = out.free;
    const RingPtr& R = p.ring;
    const int top = F.top_degree();
    const int hi_eff = top == INT_MIN ? hi : std::max(hi, top);
    if (lo > hi_eff)
        throw ValidationError("empty realization range [" + std::to_string(lo) + ", " + std::to_string(hi_eff) + "]",
                              p.name);

    // Relations and their W-translates, bucketed by degree.
    std::map<int, std::vector<Vector>> rel_by_degree;
    for (const auto& rel : p.relations) {
        if (rel.element.empty())
            continue;
        const int e = F.degree(rel.element);
        if (e < lo)
            continue;
        for (std::size_t g = 0; g < R->group()->order(); ++g)
            rel_by_degree[e].push_back(F.coords(e, F.act(g, rel.element)));
    }

    GradedModule M(R, lo, hi_eff);
    M.set_zero_above(true);
    if (top == INT_MIN)
        M.set_zero_below(true);
    std::map<int, Matrix> kernel;  // spanning columns of the relation submodule K_t
    for (int t = hi_eff; t >= lo; --t) {
        const std::size_t n = F.dim(t);
        std::vector<Vector> cols;
        if (auto it = rel_by_degree.find(t); it != rel_by_degree.end())
            cols = it->second;
        Matrix span = Matrix::from_columns(n, cols);
        for (std::size_t i = 0; i < R->rank(); ++i) {
            const int src = t - R->degree(i);
            auto it = kernel.find(src);
            if (it == kernel.end() || it->second.cols() == 0)
                continue;
            span = span.hstack(F.x_matrix(i, src) * it->second);
        }
        Subspace k = column_space(span);
        kernel[t] = k.basis;
        QuotientMap q(n, k.basis);
        std::vector<std::string> labels;
        for (auto idx : q.lifts())
            labels.push_back(F.label(t, idx));
        M.set_degree(t, q.dim(), std::move(labels));
        out.quotient.emplace(t, std::move(q));
    }
    for (int t = lo; t <= hi_eff; ++t) {
        const QuotientMap& q = out.quotient.at(t);
        const Matrix lift = q.lift_matrix();
        for (std::size_t g = 0; g < R->group()->order(); ++g)
            M.set_w_matrix(g, t, q.matrix() * F.w_matrix(g, t) * lift);
        for (std::size_t i = 0; i < R->rank(); ++i) {
            const int t2 = t + R->degree(i);
            if (t2 < lo)
                continue;
            M.set_x_matrix(i, t, out.quotient.at(t2).matrix() * F.x_matrix(i, t) * lift);
        }
    }
    out.module = std::move(M);
    return out;
}

GradedModule realize(const Presentation& m, int lo, int hi)
{
    return realize_with_quotients(m, lo, hi).module;
}

GradedModule realize(const Presentation& m, const DegreeWindow& window)
{
    window.validate();
    return realize(m, window.lo(), window.hi());
}

// ---------------------------------------------------------------------------
// Constructions on realized modules

GradedModule suspend(const GradedModule& m, int d)
{
    GradedModule out(m.ring(), m.lo() + d, m.hi() + d);
    out.set_zero_above(m.zero_above());
    out.set_zero_below(m.zero_below());
    const RingPtr& R = m.ring();
    for (int t = m.lo(); t <= m.hi(); ++t) {
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < m.dim(t); ++k)
            labels.push_back(m.label(t, k));
        out.set_degree(t + d, m.dim(t), std::move(labels));
    }
    for (int t = m.lo(); t <= m.hi(); ++t) {
        for (std::size_t g = 0; g < R->group()->order(); ++g)
            out.set_w_matrix(g, t + d, m.w_matrix(g, t));
        for (std::size_t i = 0; i < R->rank(); ++i)
            if (m.known(t + R->degree(i)))
                out.set_x_matrix(i, t + d, m.x_matrix(i, t));
    }
    return out;
}

GradedModule dual(const GradedModule& m)
{
    const RingPtr& R = m.ring();
    const auto& G = *R->group();
    GradedModule out(R, -m.hi(), -m.lo());
    out.set_zero_above(m.zero_below());
    out.set_zero_below(m.zero_above());
    for (int t = out.lo(); t <= out.hi(); ++t) {
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < m.dim(-t); ++k)
            labels.push_back(m.label(-t, k) + "^*");
        out.set_degree(t, m.dim(-t), std::move(labels));
    }
    for (int t = out.lo(); t <= out.hi(); ++t) {
        for (std::size_t g = 0; g < G.order(); ++g)
            out.set_w_matrix(g, t, m.w_matrix(G.inverse(g), -t).transpose());
        for (std::size_t i = 0; i < R->rank(); ++i) {
            // (x f)(v) = f(x v) for v in M_{-t - deg x}
            const int src = -t - R->degree(i);
            if (!m.known(src) || !out.known(t + R->degree(i)))
                continue;
            out.set_x_matrix(i, t, m.x_matrix(i, src).transpose());
        }
    }
    return out;
}

GradedModule restrict_to_polynomial_ring(const GradedModule& m, const RingPtr& poly)
{
    if (poly->group()->order() != 1 || poly->generators().degrees != m.ring()->generators().degrees)
        throw ValidationError("restriction target is not the underlying polynomial ring");
    GradedModule out(poly, m.lo(), m.hi());
    out.set_zero_above(m.zero_above());
    out.set_zero_below(m.zero_below());
    for (int t = m.lo(); t <= m.hi(); ++t) {
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < m.dim(t); ++k)
            labels.push_back(m.label(t, k));
        out.set_degree(t, m.dim(t), std::move(labels));
    }
    for (int t = m.lo(); t <= m.hi(); ++t)
        for (std::size_t i = 0; i < poly->rank(); ++i)
            if (m.known(t + poly->degree(i)))
                out.set_x_matrix(i, t, m.x_matrix(i, t));
    return out;
}

GradedModule direct_sum(const GradedModule& a, const GradedModule& b)
{
    const RingPtr& R = a.ring();
    const int lo = std::max(a.lo(), b.lo());
    const int hi = std::min(a.hi(), b.hi());
    GradedModule out(R, lo, hi);
    out.set_zero_above(a.zero_above() && b.zero_above() && a.hi() == b.hi());
    out.set_zero_below(a.zero_below() && b.zero_below() && a.lo() == b.lo());
    auto block = [](const Matrix& x, const Matrix& y) {
        Matrix m(x.rows() + y.rows(), x.cols() + y.cols());
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t j = 0; j < x.cols(); ++j)
                m(i, j) = x(i, j);
        for (std::size_t i = 0; i < y.rows(); ++i)
            for (std::size_t j = 0; j < y.cols(); ++j)
                m(x.rows() + i, x.cols() + j) = y(i, j);
        return m;
    };
    for (int t = lo; t <= hi; ++t) {
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < a.dim(t); ++k)
            labels.push_back(a.label(t, k));
        for (std::size_t k = 0; k < b.dim(t); ++k)
            labels.push_back(b.label(t, k) + "'");
        out.set_degree(t, a.dim(t) + b.dim(t), std::move(labels));
    }
    for (int t = lo; t <= hi; ++t) {
        for (std::size_t g = 0; g < R->group()->order(); ++g)
            out.set_w_matrix(g, t, block(a.w_matrix(g, t), b.w_matrix(g, t)));
        for (std::size_t i = 0; i < R->rank(); ++i)
            if (out.known(t + R->degree(i)) && a.known(t + R->degree(i)) && b.known(t + R->degree(i)))
                out.set_x_matrix(i, t, block(a.x_matrix(i, t), b.x_matrix(i, t)));
    }
    return out;
}

bool ModuleMap::check(const GradedModule& source, const GradedModule& target) const
{
    const RingPtr& R = source.ring();
    for (const auto& [t, f] : matrices) {
        if (f.rows() != target.dim(t + shift) || f.cols() != source.dim(t))
            return false;
        for (std::size_t g = 0; g < R->group()->order(); ++g)
            if (!(target.w_matrix(g, t + shift) * f == f * source.w_matrix(g, t)))
                return false;
        for (std::size_t i = 0; i < R->rank(); ++i) {
            const int t2 = t + R->degree(i);
            auto it = matrices.find(t2);
            if (it == matrices.end() || !target.known(t2 + shift))
                continue;
            if (!(target.x_matrix(i, t + shift) * f == it->second * source.x_matrix(i, t)))
                return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Hom

std::vector<std::size_t> hom_offsets(const FreeModule& f, const GradedModule& n, int t)
{
    std::vector<std::size_t> offsets;
    std::size_t off = 0;
    for (std::size_t u = 0; u < f.u_count(); ++u) {
        offsets.push_back(off);
        off += n.dim(f.u_degree(u) + t);
    }
    offsets.push_back(off);
    return offsets;
}

Matrix hom_averaging_projector(const FreeModule& f, const GradedModule& n, int t)
{
    const auto offsets = hom_offsets(f, n, t);
    const std::size_t total = offsets.back();
    const auto& G = *f.ring()->group();
    Matrix p(total, total);
    for (std::size_t b = 0; b < f.blocks().size(); ++b) {
        const auto& blk = f.blocks()[b];
        const std::size_t k = blk.rep.dim();
        if (k == 0)
            continue;
        const int nd = blk.degree + t;
        const std::size_t nn = n.dim(nd);
        if (nn == 0)
            continue;
        const std::size_t base = offsets[f.u_offset(b)];
        Matrix acc(k * nn, k * nn);
        for (std::size_t g = 0; g < G.order(); ++g)
            acc += kronecker(blk.rep(G.inverse(g)).transpose(), n.w_matrix(g, nd));
        acc *= Rational(1, static_cast<unsigned long>(G.order()));
        for (std::size_t i = 0; i < acc.rows(); ++i)
            for (std::size_t j = 0; j < acc.cols(); ++j)
                p(base + i, base + j) = acc(i, j);
    }
    return p;
}

Matrix precompose_matrix(const FreeModule& source, const std::vector<FreeElement>& images, const FreeModule& target,
                         const GradedModule& n, int t)
{
    const auto src_off = hom_offsets(source, n, t);
    const auto tgt_off = hom_offsets(target, n, t);
    Matrix m(src_off.back(), tgt_off.back());
    for (std::size_t j = 0; j < source.u_count(); ++j) {
        for (const auto& [term, c] : images[j]) {
            const int dk = target.u_degree(term.u) + t;
            Matrix xm = n.monomial_matrix(term.monomial, dk);
            for (std::size_t a = 0; a < xm.rows(); ++a)
                for (std::size_t b = 0; b < xm.cols(); ++b)
                    if (xm(a, b) != 0)
                        m(src_off[j] + a, tgt_off[term.u] + b) += c * xm(a, b);
        }
    }
    return m;
}

HomSpace hom_graded(const Presentation& m, const GradedModule& n, int t)
{
    m.validate();
    if (!same_ring(*m.ring, *n.ring()))
        throw ValidationError("hom_graded: modules live over different rings");
    FreeModule F = m.free_module();
    HomSpace hs;
    hs.t = t;
    // Window diagnostics before any linear algebra.
    int need_lo = INT_MAX, need_hi = INT_MIN;
    auto require = [&](int d) {
        if (!n.known(d)) {
            need_lo = std::min(need_lo, d);
            need_hi = std::max(need_hi, d);
        }
    };
    for (std::size_t u = 0; u < F.u_count(); ++u)
        require(F.u_degree(u) + t);
    for (const auto& rel : m.relations)
        if (!rel.element.empty())
            require(F.degree(rel.element) + t);
    if (need_lo != INT_MAX)
        throw WindowError("hom_graded: target must be realized on [" + std::to_string(need_lo) + ", " +
                              std::to_string(need_hi) + "] for maps of degree " + std::to_string(t) +
                              " (realized: [" + std::to_string(n.lo()) + ", " + std::to_string(n.hi()) + "])",
                          std::min(need_lo, n.lo()), std::max(need_hi, n.hi()));

    hs.offsets = hom_offsets(F, n, t);
    hs.ambient = hs.offsets.back();
    Subspace inv = column_space(hom_averaging_projector(F, n, t));
    // Relation equations: sum c * m . phi(u) = 0 in N_{e+t}.
    std::vector<Matrix> blocks;
    for (const auto& rel : m.relations) {
        if (rel.element.empty())
            continue;
        const int e = F.degree(rel.element) + t;
        Matrix c(n.dim(e), hs.ambient);
        for (const auto& [term, coeff] : rel.element) {
            Matrix xm = n.monomial_matrix(term.monomial, F.u_degree(term.u) + t);
            for (std::size_t a = 0; a < xm.rows(); ++a)
                for (std::size_t b = 0; b < xm.cols(); ++b)
                    if (xm(a, b) != 0)
                        c(a, hs.offsets[term.u] + b) += coeff * xm(a, b);
        }
        blocks.push_back(std::move(c));
    }
    Matrix constraints(0, hs.ambient);
    for (auto& b : blocks)
        constraints = constraints.vstack(b);
    Subspace sol = kernel_basis(constraints * inv.basis);
    hs.basis = inv.basis * sol.basis;
    return hs;
}

// ---------------------------------------------------------------------------
// Torsion

namespace {

void exponent_vectors_of_total(std::size_t r, unsigned total, Exponents& cur, std::size_t i,
                               std::vector<Exponents>& out)
{
    if (i + 1 == r) {
        cur[i] = total;
        out.push_back(cur);
        cur[i] = 0;
        return;
    }
    for (unsigned k = total + 1; k-- > 0;) {
        cur[i] = k;
        exponent_vectors_of_total(r, total - k, cur, i + 1, out);
    }
    cur[i] = 0;
}

}  // namespace

TorsionResult torsion_submodule(const GradedModule& m, int t_min, int t_max)
{
    const RingPtr& R = m.ring();
    const int maxabs = R->max_abs_degree();
    TorsionResult res;
    GradedModule gamma(R, t_min, t_max);
    gamma.set_zero_above(m.zero_above() && t_max >= m.hi());
    std::map<int, Matrix> basis;
    for (int t = t_min; t <= t_max; ++t) {
        const std::size_t n = m.dim(t);
        Subspace k;
        if (m.zero_below() || R->rank() == 0 || n == 0) {
            k = Subspace::full(n);
        } else {
            const int s = (t - m.lo()) / maxabs;
            if (s < 1)
                throw WindowError("torsion: degree " + std::to_string(t) +
                                      " has no room below it to test annihilation by powers of m; extend the "
                                      "window down to " +
                                      std::to_string(t - maxabs),
                                  t - maxabs, m.hi());
            std::vector<Exponents> mons;
            Exponents cur(R->rank(), 0);
            exponent_vectors_of_total(R->rank(), static_cast<unsigned>(s), cur, 0, mons);
            Matrix stacked(0, n);
            for (const auto& e : mons)
                stacked = stacked.vstack(m.monomial_matrix(e, t));
            k = kernel_basis(stacked);
        }
        basis[t] = k.basis;
        std::vector<std::string> labels;
        for (std::size_t j = 0; j < k.dim(); ++j)
            labels.push_back("tors" + std::to_string(j));
        gamma.set_degree(t, k.dim(), std::move(labels));
    }
    for (int t = t_min; t <= t_max; ++t) {
        const Matrix& b = basis[t];
        for (std::size_t g = 0; g < R->group()->order(); ++g) {
            auto c = solve(b, m.w_matrix(g, t) * b);
            if (!c)
                throw InvariantError("torsion submodule is not W-stable in degree " + std::to_string(t));
            gamma.set_w_matrix(g, t, *c);
        }
        for (std::size_t i = 0; i < R->rank(); ++i) {
            const int t2 = t + R->degree(i);
            if (t2 < t_min)
                continue;
            auto c = solve(basis[t2], m.x_matrix(i, t) * b);
            if (!c)
                throw InvariantError("torsion submodule is not closed under x_" + std::to_string(i) + " in degree " +
                                     std::to_string(t));
            gamma.set_x_matrix(i, t, *c);
        }
        res.inclusion[t] = b;
    }
    res.torsion = std::move(gamma);
    return res;
}

bool is_torsion(const GradedModule& m, int t_min, int t_max)
{
    TorsionResult r = torsion_submodule(m, t_min, t_max);
    for (int t = t_min; t <= t_max; ++t)
        if (r.torsion.dim(t) != m.dim(t))
            return false;
    return true;
}

}  // namespace freeq
