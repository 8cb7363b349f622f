#ifndef FREEQ_EXT_HPP
#define FREEQ_EXT_HPP

#include <freeq/resolution.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace freeq {

struct ExtEntry {
    int s = 0;
    int t = 0;
    std::size_t dim = 0;
    // One label per basis class: "F<s>:<generator> -> <target basis element>".
    std::vector<std::string> basis;
};

/*
 * Bigraded Ext^{s,t}_{R[W]}(M, N): s the resolution degree, t the degree by
 * which maps raise degree. Only nonzero entries are stored; every (s, t)
 * with 0 <= s <= r and t in [t_min, t_max] was computed.
 */
struct ExtTable {
    std::size_t r = 0;
    int t_min = 0;
    int t_max = 0;
    std::map<std::pair<int, int>, ExtEntry> entries;

    std::size_t dim(int s, int t) const;
    // Nonzero dimensions keyed by (s, t).
    std::map<std::pair<int, int>, std::size_t> dims() const;
    bool concentrated_in_row_zero() const;
};

// Lowest degree searched for resolution generators when computing Ext out of m.
int resolution_floor(const Presentation& m, const DegreeWindow& window);

ExtTable ext_from_resolution(const ProjectiveComplex& resolution, const GradedModule& n, int t_min, int t_max);
ExtTable ext_table(const Presentation& m, const GradedModule& n, const DegreeWindow& window);
// N is realized on [window.lo(), window.hi()].
ExtTable ext_table(const Presentation& m, const Presentation& n, const DegreeWindow& window);

struct ChangeOfRingsReport {
    ExtTable twisted;    // Ext_{R[W]}(QW, N)
    ExtTable untwisted;  // Ext_R(Q, N restricted to R)
    bool agree = false;
};

ChangeOfRingsReport change_of_rings_check(const GradedModule& n, const DegreeWindow& window);
ChangeOfRingsReport change_of_rings_check(const Presentation& n, const DegreeWindow& window);

/*
 * d_k : (s, t) -> (s + k, t + t_per_page * k + t_offset). The default is
 * the usual Adams convention (s + k, t + k - 1).
 */
struct DifferentialConvention {
    int t_per_page = 1;
    int t_offset = -1;

    std::pair<int, int> target(int s, int t, int k) const { return {s + k, t + t_per_page * k + t_offset}; }
};

struct ChartClass {
    int s = 0;
    int t = 0;
    std::size_t dim = 0;
    // Bidegrees (within rows 0..r) that some d_k, k >= 2, could hit from or
    // come from, and that carry a nonzero group.
    std::vector<std::pair<int, int>> reachable_targets;
    std::vector<std::pair<int, int>> reachable_sources;
    // A reachable bidegree fell outside the computed t-range.
    bool undetermined = false;
    bool permanent_by_sparsity = false;
};

struct AdamsE2Report {
    ExtTable table;
    DifferentialConvention convention;
    std::vector<ChartClass> classes;
};

AdamsE2Report adams_e2_report(const ExtTable& table, DifferentialConvention convention = {});

// Header line stating how (s, t) relates to the cohomological bicodegree.
std::string grading_dictionary();
// s rows ascending upward, t columns; each cell prints the dimension.
std::string render_chart(const ExtTable& table);
std::string render_chart(const AdamsE2Report& report);

/*
 * d when M is concentrated in the single degree d, dim M_d = |W|, the
 * polynomial generators act by zero and M_d is isomorphic to the regular
 * representation.
 */
std::optional<int> recognize_cell(const GradedModule& m);

}  // namespace freeq

#endif
