#include <freeq/errors.hpp>
#include <freeq/ext.hpp>

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <sstream>

namespace freeq {

std::size_t ExtTable::dim(int s, int t) const
{
    auto it = entries.find({s, t});
    return it == entries.end() ? 0 : it->second.dim;
}

std::map<std::pair<int, int>, std::size_t> ExtTable::dims() const
{
    std::map<std::pair<int, int>, std::size_t> out;
    for (const auto& [k, e] : entries)
        out[k] = e.dim;
    return out;
}

bool ExtTable::concentrated_in_row_zero() const
{
    return std::all_of(entries.begin(), entries.end(), [](const auto& kv) { return kv.first.first == 0; });
}

int resolution_floor(const Presentation& m, const DegreeWindow& window)
{
    const int b = m.top_degree() == INT_MIN ? 0 : m.bottom_degree();
    return std::min(window.lo(), b - default_margin(m));
}

namespace {

// Label of an ambient Hom coordinate: which generator it evaluates and
// which target basis element it names.
std::string coordinate_label(const FreeModule& f, const GradedModule& n, const std::vector<std::size_t>& offsets,
                             int t, int s, std::size_t coord)
{
    const auto it = std::upper_bound(offsets.begin(), offsets.end(), coord);
    const std::size_t u = static_cast<std::size_t>(it - offsets.begin()) - 1;
    const std::size_t k = coord - offsets[u];
    return "F" + std::to_string(s) + ":" + f.u_label(u) + " -> " + n.label(f.u_degree(u) + t, k);
}

std::vector<std::string> class_labels(const Matrix& reps, const FreeModule& f, const GradedModule& n, int t, int s)
{
    const auto offsets = hom_offsets(f, n, t);
    RrefResult rr = rref(reps.transpose());
    std::vector<std::string> out;
    for (std::size_t p : rr.pivots)
        out.push_back(coordinate_label(f, n, offsets, t, s, p));
    return out;
}

}  // namespace

ExtTable ext_from_resolution(const ProjectiveComplex& res, const GradedModule& n, int t_min, int t_max)
{
    const RingPtr& R = res.ring;
    if (!same_ring(*R, *n.ring()))
        throw ValidationError("ext: modules live over different rings");
    if (res.length() > R->rank())
        throw InvariantError("resolution of length " + std::to_string(res.length()) + " exceeds r = " +
                             std::to_string(R->rank()));
    ExtTable table;
    table.r = R->rank();
    table.t_min = t_min;
    table.t_max = t_max;
    const std::size_t len = res.terms.size();

    // Window diagnostics before any linear algebra.
    int need_lo = INT_MAX, need_hi = INT_MIN;
    for (const auto& f : res.terms)
        for (std::size_t u = 0; u < f.u_count(); ++u)
            for (int t : {t_min, t_max}) {
                const int d = f.u_degree(u) + t;
                if (!n.known(d)) {
                    need_lo = std::min(need_lo, d);
                    need_hi = std::max(need_hi, d);
                }
            }
    if (need_lo != INT_MAX)
        throw WindowError("ext: target must be realized on [" + std::to_string(need_lo) + ", " +
                              std::to_string(need_hi) + "] (realized: [" + std::to_string(n.lo()) + ", " +
                              std::to_string(n.hi()) + "])",
                          std::min(need_lo, n.lo()), std::max(need_hi, n.hi()));

    for (int t = t_min; t <= t_max; ++t) {
        // Invariant cochains per s, in ambient coordinates.
        std::vector<Matrix> inv(len);
        for (std::size_t s = 0; s < len; ++s)
            inv[s] = column_space(hom_averaging_projector(res.terms[s], n, t)).basis;
        // delta[s] : C^s -> C^{s+1} in invariant coordinates.
        std::vector<Matrix> delta(len);
        for (std::size_t s = 0; s < len; ++s) {
            if (s + 1 == len) {
                delta[s] = Matrix(0, inv[s].cols());
                continue;
            }
            Matrix p = precompose_matrix(res.terms[s + 1], res.differentials[s + 1], res.terms[s], n, t);
            auto c = solve(inv[s + 1], p * inv[s]);
            if (!c)
                throw InvariantError("precomposition does not preserve equivariant maps at s = " + std::to_string(s) +
                                     ", t = " + std::to_string(t));
            delta[s] = std::move(*c);
        }
        for (std::size_t s = 0; s < len; ++s) {
            const Matrix d_in = s == 0 ? Matrix(inv[0].cols(), 0) : delta[s - 1];
            HomologyResult h = homology(delta[s], d_in);
            if (h.dim == 0)
                continue;
            if (s > table.r)
                throw InvariantError("Ext^{" + std::to_string(s) + "," + std::to_string(t) +
                                     "} is nonzero above the vanishing line s <= r");
            ExtEntry e;
            e.s = static_cast<int>(s);
            e.t = t;
            e.dim = h.dim;
            e.basis = class_labels(inv[s] * h.representatives, res.terms[s], n, t, e.s);
            table.entries[{e.s, t}] = std::move(e);
        }
    }
    return table;
}

ExtTable ext_table(const Presentation& m, const GradedModule& n, const DegreeWindow& window)
{
    window.validate();
    ProjectiveComplex res = minimal_free_resolution(m, resolution_floor(m, window));
    return ext_from_resolution(res, n, window.t_min, window.t_max);
}

ExtTable ext_table(const Presentation& m, const Presentation& n, const DegreeWindow& window)
{
    window.validate();
    return ext_table(m, realize(n, window.lo(), window.hi()), window);
}

ChangeOfRingsReport change_of_rings_check(const GradedModule& n, const DegreeWindow& window)
{
    ChangeOfRingsReport rep;
    const RingPtr& R = n.ring();
    rep.twisted = ext_table(group_ring_module(R), n, window);
    RingPtr R0 = underlying_polynomial_ring(*R);
    GradedModule n0 = restrict_to_polynomial_ring(n, R0);
    rep.untwisted = ext_table(trivial_module(R0), n0, window);
    rep.agree = rep.twisted.dims() == rep.untwisted.dims();
    return rep;
}

ChangeOfRingsReport change_of_rings_check(const Presentation& n, const DegreeWindow& window)
{
    window.validate();
    return change_of_rings_check(realize(n, window.lo(), window.hi()), window);
}

AdamsE2Report adams_e2_report(const ExtTable& table, DifferentialConvention convention)
{
    AdamsE2Report rep;
    rep.table = table;
    rep.convention = convention;
    const int r = static_cast<int>(table.r);
    auto in_range = [&](int t) { return t >= table.t_min && t <= table.t_max; };
    for (const auto& [key, e] : table.entries) {
        ChartClass c;
        c.s = e.s;
        c.t = e.t;
        c.dim = e.dim;
        for (int k = 2; e.s + k <= r; ++k) {
            auto [s2, t2] = convention.target(e.s, e.t, k);
            if (!in_range(t2))
                c.undetermined = true;
            else if (table.dim(s2, t2) != 0)
                c.reachable_targets.push_back({s2, t2});
        }
        for (int k = 2; e.s - k >= 0; ++k) {
            // Solve target(s0, t0, k) = (s, t) for the source.
            const int s0 = e.s - k;
            const int t0 = e.t - convention.t_per_page * k - convention.t_offset;
            if (!in_range(t0))
                c.undetermined = true;
            else if (table.dim(s0, t0) != 0)
                c.reachable_sources.push_back({s0, t0});
        }
        c.permanent_by_sparsity = !c.undetermined && c.reachable_targets.empty() && c.reachable_sources.empty();
        rep.classes.push_back(std::move(c));
    }
    return rep;
}

std::string grading_dictionary()
{
    return "grading: s = resolution degree, t = degree raised by the map; class at (s,t) has cohomological "
           "bicodegree (s,-t)";
}

namespace {

std::string render(const ExtTable& table, const std::map<std::pair<int, int>, char>& marks)
{
    std::ostringstream os;
    os << grading_dictionary() << "\n";
    std::size_t width = 3;
    for (const auto& [k, e] : table.entries)
        width = std::max(width, std::to_string(e.dim).size() + 2);
    for (int t = table.t_min; t <= table.t_max; ++t)
        width = std::max(width, std::to_string(t).size() + 1);
    auto cell = [&](const std::string& s) { return std::string(width - s.size(), ' ') + s; };
    for (int s = static_cast<int>(table.r); s >= 0; --s) {
        os << "s=" << s << " |";
        for (int t = table.t_min; t <= table.t_max; ++t) {
            const std::size_t d = table.dim(s, t);
            std::string txt = d == 0 ? "." : std::to_string(d);
            auto it = marks.find({s, t});
            if (it != marks.end())
                txt += it->second;
            os << cell(txt);
        }
        os << "\n";
    }
    os << "     +" << std::string(width * static_cast<std::size_t>(table.t_max - table.t_min + 1), '-') << "\n";
    os << "   t  ";
    for (int t = table.t_min; t <= table.t_max; ++t)
        os << cell(std::to_string(t));
    os << "\n";
    return os.str();
}

}  // namespace

std::string render_chart(const ExtTable& table)
{
    return render(table, {});
}

std::string render_chart(const AdamsE2Report& report)
{
    std::map<std::pair<int, int>, char> marks;
    for (const auto& c : report.classes)
        marks[{c.s, c.t}] = c.permanent_by_sparsity ? '*' : (c.undetermined ? '?' : ' ');
    std::string out = render(report.table, marks);
    const int a = report.convention.t_per_page;
    const int b = report.convention.t_offset;
    std::string shift;
    if (a != 0)
        shift += (a > 0 ? "+" : "-") + (std::abs(a) == 1 ? std::string() : std::to_string(std::abs(a))) + "k";
    if (b != 0)
        shift += (b > 0 ? "+" : "-") + std::to_string(std::abs(b));
    out += "* permanent by sparsity, ? reachable bidegree outside the computed range; d_k: (s,t) -> (s+k, t" +
           shift + ")\n";
    return out;
}

std::optional<int> recognize_cell(const GradedModule& m)
{
    const auto support = m.support();
    if (support.size() != 1)
        return std::nullopt;
    const int d = support.front();
    const RingPtr& R = m.ring();
    const GroupPtr& G = R->group();
    if (m.dim(d) != G->order())
        return std::nullopt;
    for (std::size_t i = 0; i < R->rank(); ++i) {
        const int d2 = d + R->degree(i);
        if (m.known(d2) && !m.x_matrix(i, d).is_zero())
            return std::nullopt;
    }
    if (!find_isomorphism(m.rep(d), Representation::regular(G)))
        return std::nullopt;
    return d;
}

}  // namespace freeq
