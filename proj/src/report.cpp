#include <freeq/errors.hpp>
#include <freeq/report.hpp>

namespace freeq {

Json to_json(const Rational& q)
{
    return to_string(q);
}

Json to_json(const Matrix& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string element_string(const FreeModule& f, const FreeElement& x)
{
    if (x.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [term, c] : x) {
        const std::string mono = f.ring()->monomial_string(term.monomial);
        const std::string body = mono == "1" ? f.u_label(term.u) : mono + "*" + f.u_label(term.u);
        const Rational a = abs(c);
        out += c < 0 ? (first ? "-" : " - ") : (first ? "" : " + ");
        out += a == 1 ? body : to_string(a) + "*" + body;
        first = false;
    }
    return out;
}

Json conventions_json()
{
    return {
        {"hom_degree", "a degree-t map raises degree by t"},
        {"grading", grading_dictionary()},
        {"polynomial_degrees", "homological: generators in even negative degrees"},
        {"monomial_order", "lex, larger exponents of earlier generators first"},
        {"koszul_sign", "d(x_i1^...^x_is) = sum_k (-1)^(k+1) x_ik (..x_ik omitted..)"},
    };
}

Json to_json(const ExtTable& table)
{
    Json entries = Json::array();
    for (const auto& [key, e] : table.entries)
        entries.push_back({{"s", e.s}, {"t", e.t}, {"dim", e.dim}, {"basis", e.basis}});
    return {
        {"r", table.r},
        {"window", {{"t_min", table.t_min}, {"t_max", table.t_max}}},
        {"entries", std::move(entries)},
        {"convention", conventions_json()},
    };
}

Json to_json(const AdamsE2Report& report)
{
    Json j = to_json(report.table);
    const auto& cv = report.convention;
    j["convention"]["differential"] = {{"s_step", 1}, {"t_per_page", cv.t_per_page}, {"t_offset", cv.t_offset}};
    Json classes = Json::array();
    for (const auto& c : report.classes) {
        Json targets = Json::array(), sources = Json::array();
        for (const auto& [s, t] : c.reachable_targets)
            targets.push_back({s, t});
        for (const auto& [s, t] : c.reachable_sources)
            sources.push_back({s, t});
        classes.push_back({{"s", c.s},
                           {"t", c.t},
                           {"dim", c.dim},
                           {"reachable_targets", std::move(targets)},
                           {"reachable_sources", std::move(sources)},
                           {"undetermined", c.undetermined},
                           {"permanent_by_sparsity", c.permanent_by_sparsity}});
    }
    j["classes"] = std::move(classes);
    return j;
}

Json to_json(const ProjectiveComplex& c)
{
    Json terms = Json::array();
    for (std::size_t s = 0; s < c.terms.size(); ++s) {
        const auto& f = c.terms[s];
        Json gens = Json::array();
        for (std::size_t u = 0; u < f.u_count(); ++u)
            gens.push_back({{"label", f.u_label(u)}, {"degree", f.u_degree(u)}});
        terms.push_back({{"s", s}, {"rank", to_json(c.rank(s))}, {"free", c.is_free(s)}, {"generators", gens}});
    }
    Json diffs = Json::array();
    for (std::size_t s = 1; s < c.differentials.size(); ++s) {
        Json images = Json::array();
        for (std::size_t u = 0; u < c.terms[s].u_count(); ++u)
            images.push_back({{"generator", c.terms[s].u_label(u)},
                              {"image", element_string(c.terms[s - 1], c.differentials[s][u])}});
        diffs.push_back({{"s", s}, {"images", std::move(images)}});
    }
    Json j = {{"length", c.length()}, {"terms", std::move(terms)}, {"differentials", std::move(diffs)}};
    if (c.augmented) {
        Json aug = Json::array();
        const FreeModule fm = c.augmented->free_module();
        for (std::size_t u = 0; u < c.augmentation.size(); ++u)
            aug.push_back({{"generator", c.terms.at(0).u_label(u)}, {"image", element_string(fm, c.augmentation[u])}});
        j["augmentation"] = {{"module", c.augmented->name}, {"images", std::move(aug)}};
    }
    return j;
}

Json to_json(const ExactnessReport& r)
{
    Json h = Json::array();
    for (const auto& [key, d] : r.homology)
        h.push_back({{"position", key.first}, {"t", key.second}, {"dim", d}});
    return {{"exact", r.exact}, {"range", {{"lo", r.lo}, {"hi", r.hi}}}, {"nonzero_homology", std::move(h)}};
}

Json to_json(const TorsionResult& r, int t_min, int t_max)
{
    Json degrees = Json::array();
    for (int t = t_min; t <= t_max; ++t) {
        const std::size_t d = r.torsion.dim(t);
        if (d == 0)
            continue;
        degrees.push_back({{"t", t}, {"dim", d}, {"inclusion", to_json(r.inclusion.at(t))}});
    }
    return {{"window", {{"t_min", t_min}, {"t_max", t_max}}}, {"degrees", std::move(degrees)}};
}

namespace {

std::string combination_string(const std::vector<std::string>& labels, const Vector& v)
{
    std::string out;
    bool first = true;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0)
            continue;
        const Rational a = abs(v[k]);
        out += v[k] < 0 ? (first ? "-" : " - ") : (first ? "" : " + ");
        out += a == 1 ? labels[k] : to_string(a) + "*" + labels[k];
        first = false;
    }
    return first ? "0" : out;
}

}  // namespace

Json to_json(const EquivariantDGA& c, const FormalityMap& f, const QuasiIsoReport& r)
{
    const auto& gens = f.symm->generators();
    Json assignment = Json::array();
    for (std::size_t i = 0; i < gens.size(); ++i)
        assignment.push_back({{"generator", gens.names[i]},
                              {"degree", gens.degrees[i]},
                              {"image", combination_string(c.labels(gens.degrees[i]), f.assignment[i])}});
    Json degrees = Json::array();
    for (const auto& d : r.degrees)
        degrees.push_back({{"n", d.n},
                           {"symm_dim", d.symm_dim},
                           {"homology_dim", d.homology_dim},
                           {"rank", d.rank},
                           {"lands_in_cycles", d.lands_in_cycles},
                           {"pass", d.pass}});
    return {{"assignment", std::move(assignment)},
            {"assignment_in_cycles", r.assignment_in_cycles},
            {"assignment_equivariant", r.assignment_equivariant},
            {"degrees", std::move(degrees)},
            {"pass", r.pass},
            {"verdict", r.pass ? "quasi-iso: all degrees pass" : "quasi-iso: failed"}};
}

Json error_json(const std::exception& e)
{
    Json err = {{"message", e.what()}};
    if (const auto* w = dynamic_cast<const WindowError*>(&e)) {
        err["kind"] = "window";
        err["required_min"] = w->required_min();
        err["required_max"] = w->required_max();
    } else if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
        err["kind"] = "validation";
        if (!v->where().empty())
            err["where"] = v->where();
    } else if (dynamic_cast<const InvariantError*>(&e)) {
        err["kind"] = "invariant";
    } else {
        err["kind"] = "internal";
    }
    return {{"error", std::move(err)}};
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

}  // namespace freeq
