#ifndef FREEQ_CONFIG_HPP
#define FREEQ_CONFIG_HPP

#include <freeq/formality.hpp>
#include <freeq/module.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace freeq {

struct DgaConfig {
    EquivariantDGA dga;
    GeneratorSpace v;
};

/*
 * A validated session: every block has been checked by the code that owns
 * it before any computation runs.
 */
struct SessionConfig {
    std::string source;
    GroupPtr group;
    RingPtr ring;
    std::map<std::string, Representation> representations;
    // Declaration order is kept for deterministic reports.
    std::vector<std::string> module_order;
    std::map<std::string, Presentation> modules;
    std::optional<DgaConfig> dga;
    // Reported range and margin from the window block; the CLI fills in
    // whatever is missing from flags or defaults.
    std::optional<std::pair<int, int>> window;
    std::optional<int> margin;
    // Per-command default parameters, e.g. commands.ext.M.
    std::map<std::string, std::map<std::string, std::string>> commands;

    const Presentation& module(const std::string& name) const;
    std::string command_parameter(const std::string& command, const std::string& key) const;
};

SessionConfig parse_config(const std::string& path);
SessionConfig parse_config_string(const std::string& text, const std::string& source = "<string>");

// "p", "p/q", with optional sign. Shared with the relation grammar.
Rational parse_rational_field(const std::string& text, const std::string& where);

/*
 * Relation grammar: a sum of terms "coeff*f1*f2*...", each factor a ring
 * generator (optionally "^k"), a group element, or exactly one basis label
 * of the free module (e.g. "g" or "w.g").
 */
FreeElement parse_free_element(const FreeModule& f, const std::string& text);
// Linear combination of labels from `labels`, e.g. "2*b - 1/2*c^2".
Vector parse_linear_combination(const std::vector<std::string>& labels, const std::string& text,
                                const std::string& where);

}  // namespace freeq

#endif
