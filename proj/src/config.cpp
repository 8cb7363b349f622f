#include <freeq/config.hpp>
#include <freeq/errors.hpp>

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace freeq {

const Presentation& SessionConfig::module(const std::string& name) const
{
    auto it = modules.find(name);
    if (it == modules.end())
        throw ValidationError("unknown module '" + name + "'", source);
    return it->second;
}

std::string SessionConfig::command_parameter(const std::string& command, const std::string& key) const
{
    auto it = commands.find(command);
    if (it == commands.end())
        return {};
    auto jt = it->second.find(key);
    return jt == it->second.end() ? std::string() : jt->second;
}

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

// Signed terms of a sum; the sign of each term is returned separately.
std::vector<std::pair<int, std::string>> split_terms(const std::string& text, const std::string& where)
{
    std::vector<std::pair<int, std::string>> out;
    int sign = 1;
    std::string cur;
    bool seen = false;
    auto flush = [&](bool final_term) {
        const std::string t = trim(cur);
        if (t.empty()) {
            if (seen || final_term)
                throw ValidationError("empty term in '" + text + "'", where);
        } else {
            out.emplace_back(sign, t);
        }
        cur.clear();
    };
    for (char ch : text) {
        if (ch == '+' || ch == '-') {
            if (!trim(cur).empty()) {
                flush(false);
                sign = 1;
            } else if (seen) {
                throw ValidationError("misplaced sign in '" + text + "'", where);
            }
            if (ch == '-')
                sign = -sign;
            seen = true;
        } else {
            cur += ch;
        }
    }
    flush(true);
    return out;
}

bool starts_numeric(const std::string& s)
{
    return !s.empty() && std::isdigit(static_cast<unsigned char>(s[0]));
}

struct Parser {
    std::string source;

    std::string where(const YAML::Node& n, const std::string& path) const
    {
        const auto m = n.Mark();
        if (m.is_null())
            return source + ": " + path;
        return source + ":" + std::to_string(m.line + 1) + ": " + path;
    }

    [[noreturn]] void fail(const YAML::Node& n, const std::string& path, const std::string& msg) const
    {
        throw ValidationError(msg, where(n, path));
    }

    void keys(const YAML::Node& n, const std::string& path, std::set<std::string> allowed) const
    {
        if (!n.IsMap())
            fail(n, path, "expected a mapping");
        for (const auto& kv : n) {
            const std::string k = kv.first.as<std::string>();
            if (!allowed.count(k))
                fail(kv.first, path + "." + k, "unknown key '" + k + "'");
        }
    }

    // YAML allows repeated keys; a config must not.
    void unique_keys(const YAML::Node& n, const std::string& path) const
    {
        if (n.IsSequence()) {
            for (std::size_t i = 0; i < n.size(); ++i)
                unique_keys(n[i], path + "[" + std::to_string(i) + "]");
            return;
        }
        if (!n.IsMap())
            return;
        std::set<std::string> seen;
        for (const auto& kv : n) {
            const std::string k = kv.first.IsScalar() ? kv.first.as<std::string>() : "<complex key>";
            if (!seen.insert(k).second)
                fail(kv.first, path + "." + k, "duplicate key '" + k + "'");
            unique_keys(kv.second, path + "." + k);
        }
    }

    std::string scalar(const YAML::Node& n, const std::string& path) const
    {
        if (!n || !n.IsScalar())
            fail(n, path, "expected a scalar");
        return n.as<std::string>();
    }

    int integer(const YAML::Node& n, const std::string& path) const
    {
        const std::string s = trim(scalar(n, path));
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(s, &pos);
        } catch (const std::exception&) {
            fail(n, path, "expected an integer, got '" + s + "'");
        }
        if (pos != s.size())
            fail(n, path, "expected an integer, got '" + s + "'");
        return v;
    }

    Rational rational(const YAML::Node& n, const std::string& path) const
    {
        return parse_rational_field(scalar(n, path), where(n, path));
    }

    const YAML::Node required(const YAML::Node& n, const std::string& key, const std::string& path) const
    {
        const YAML::Node c = n[key];
        if (!c)
            fail(n, path, "missing key '" + key + "'");
        return c;
    }

    Matrix matrix(const YAML::Node& n, const std::string& path, std::size_t rows, std::size_t cols) const
    {
        if (!n.IsSequence() || n.size() != rows)
            fail(n, path, "expected " + std::to_string(rows) + " rows");
        Matrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            const YAML::Node row = n[i];
            const std::string rp = path + "[" + std::to_string(i) + "]";
            if (!row.IsSequence() || row.size() != cols)
                fail(row, rp, "expected " + std::to_string(cols) + " entries");
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = rational(row[j], rp + "[" + std::to_string(j) + "]");
        }
        return m;
    }

    std::size_t element(const GroupPtr& g, const YAML::Node& n, const std::string& path) const
    {
        const std::string name = scalar(n, path);
        auto idx = g->find(name);
        if (!idx)
            fail(n, path, "unknown group element '" + name + "'");
        return *idx;
    }

    // Matrices for listed group elements; unlisted ones act by the identity.
    Representation action(const GroupPtr& g, const YAML::Node& n, const std::string& path, std::size_t dim) const
    {
        std::vector<Matrix> mats(g->order(), Matrix::identity(dim));
        if (n) {
            if (!n.IsMap())
                fail(n, path, "expected a mapping from group elements to matrices");
            for (const auto& kv : n) {
                const std::string ep = path + "." + kv.first.as<std::string>();
                mats[element(g, kv.first, ep)] = matrix(kv.second, ep, dim, dim);
            }
        }
        Representation rep(g, dim, std::move(mats));
        try {
            rep.validate();
        } catch (const ValidationError& e) {
            fail(n, path, e.what());
        }
        return rep;
    }

    GroupPtr group(const YAML::Node& n) const
    {
        if (n.IsScalar()) {
            try {
                return builtin_group(n.as<std::string>());
            } catch (const ValidationError& e) {
                fail(n, "group", e.what());
            }
        }
        keys(n, "group", {"elements", "table"});
        const YAML::Node el = required(n, "elements", "group");
        const YAML::Node tb = required(n, "table", "group");
        if (!el.IsSequence())
            fail(el, "group.elements", "expected a list of element names");
        std::vector<std::string> names;
        for (std::size_t i = 0; i < el.size(); ++i)
            names.push_back(scalar(el[i], "group.elements[" + std::to_string(i) + "]"));
        if (!tb.IsSequence() || tb.size() != names.size())
            fail(tb, "group.table", "expected " + std::to_string(names.size()) + " rows");
        std::vector<std::vector<std::size_t>> table;
        for (std::size_t i = 0; i < tb.size(); ++i) {
            const std::string rp = "group.table[" + std::to_string(i) + "]";
            if (!tb[i].IsSequence() || tb[i].size() != names.size())
                fail(tb[i], rp, "expected " + std::to_string(names.size()) + " entries");
            std::vector<std::size_t> row;
            for (std::size_t j = 0; j < tb[i].size(); ++j) {
                const std::string nm = scalar(tb[i][j], rp + "[" + std::to_string(j) + "]");
                auto it = std::find(names.begin(), names.end(), nm);
                if (it == names.end())
                    fail(tb[i][j], rp, "unknown element '" + nm + "'");
                row.push_back(static_cast<std::size_t>(it - names.begin()));
            }
            table.push_back(std::move(row));
        }
        try {
            return std::make_shared<const FiniteGroup>(group_from_table(names, table));
        } catch (const ValidationError& e) {
            fail(n, "group", e.what());
        }
    }

    GeneratorSpace generator_space(const GroupPtr& g, const YAML::Node& n, const std::string& path) const
    {
        GeneratorSpace gs;
        const YAML::Node gens = n["generators"];
        if (gens) {
            if (!gens.IsSequence())
                fail(gens, path + ".generators", "expected a list");
            for (std::size_t i = 0; i < gens.size(); ++i) {
                const std::string gp = path + ".generators[" + std::to_string(i) + "]";
                keys(gens[i], gp, {"name", "degree"});
                gs.names.push_back(scalar(required(gens[i], "name", gp), gp + ".name"));
                gs.degrees.push_back(integer(required(gens[i], "degree", gp), gp + ".degree"));
            }
        }
        gs.action = action(g, n["action"], path + ".action", gs.names.size());
        return gs;
    }

    RingPtr ring(const GroupPtr& g, const YAML::Node& n) const
    {
        keys(n, "ring", {"generators", "action"});
        GeneratorSpace gs = generator_space(g, n, "ring");
        try {
            return build_ring(std::move(gs), g);
        } catch (const ValidationError& e) {
            fail(n, "ring", e.what());
        }
    }

    Representation representation(const GroupPtr& g, const YAML::Node& n, const std::string& path) const
    {
        keys(n, path, {"dim", "matrices"});
        const int dim = integer(required(n, "dim", path), path + ".dim");
        if (dim < 0)
            fail(n, path + ".dim", "dimension must be nonnegative");
        return action(g, n["matrices"], path + ".matrices", static_cast<std::size_t>(dim));
    }

    Presentation module(const SessionConfig& s, const std::string& name, const YAML::Node& n) const
    {
        const std::string path = "modules." + name;
        keys(n, path, {"builtin", "degree", "shift", "generators", "relations", "sum"});
        Presentation p;
        const int degree = n["degree"] ? integer(n["degree"], path + ".degree") : 0;
        if (n["builtin"]) {
            const std::string b = scalar(n["builtin"], path + ".builtin");
            if (n["generators"] || n["relations"] || n["sum"])
                fail(n, path, "builtin modules take no generators, relations or sum");
            if (b == "group_ring")
                p = group_ring_module(s.ring, degree);
            else if (b == "free")
                p = free_rank_one(s.ring, degree);
            else if (b == "trivial")
                p = trivial_module(s.ring, degree);
            else
                fail(n["builtin"], path + ".builtin", "unknown builtin '" + b + "' (group_ring, free, trivial)");
        } else if (n["sum"]) {
            if (n["generators"] || n["relations"] || n["degree"])
                fail(n, path, "a sum takes no generators, relations or degree");
            const YAML::Node parts = n["sum"];
            if (!parts.IsSequence() || parts.size() == 0)
                fail(parts, path + ".sum", "expected a nonempty list of module names");
            for (std::size_t i = 0; i < parts.size(); ++i) {
                const std::string part = scalar(parts[i], path + ".sum");
                auto it = s.modules.find(part);
                if (it == s.modules.end())
                    fail(parts[i], path + ".sum", "module '" + part + "' is not defined before this one");
                p = i == 0 ? it->second : direct_sum(p, it->second);
            }
        } else {
            if (n["degree"])
                fail(n["degree"], path + ".degree", "degree applies to builtin modules; use shift");
            p.ring = s.ring;
            const YAML::Node gens = required(n, "generators", path);
            if (!gens.IsSequence())
                fail(gens, path + ".generators", "expected a list");
            for (std::size_t i = 0; i < gens.size(); ++i) {
                const std::string gp = path + ".generators[" + std::to_string(i) + "]";
                keys(gens[i], gp, {"name", "degree", "rep"});
                const std::string gname = scalar(required(gens[i], "name", gp), gp + ".name");
                const int gdeg = integer(required(gens[i], "degree", gp), gp + ".degree");
                const std::string rep = gens[i]["rep"] ? scalar(gens[i]["rep"], gp + ".rep") : "regular";
                if (rep == "regular") {
                    p.generators.push_back(free_generator(gname, gdeg, s.group));
                } else {
                    GeneratorBlock b;
                    b.name = gname;
                    b.degree = gdeg;
                    if (rep == "trivial") {
                        b.rep = Representation::trivial(s.group);
                    } else {
                        auto it = s.representations.find(rep);
                        if (it == s.representations.end())
                            fail(gens[i]["rep"], gp + ".rep", "unknown representation '" + rep + "'");
                        b.rep = it->second;
                    }
                    p.generators.push_back(std::move(b));
                }
            }
            const FreeModule f = p.free_module();
            const YAML::Node rels = n["relations"];
            if (rels) {
                if (!rels.IsSequence())
                    fail(rels, path + ".relations", "expected a list");
                for (std::size_t i = 0; i < rels.size(); ++i) {
                    const std::string rp = path + ".relations[" + std::to_string(i) + "]";
                    const std::string text = scalar(rels[i], rp);
                    try {
                        p.relations.push_back({parse_free_element(f, text)});
                    } catch (const ValidationError& e) {
                        fail(rels[i], rp, e.what());
                    }
                }
            }
        }
        if (n["shift"])
            p = suspend(p, integer(n["shift"], path + ".shift"));
        p.name = name;
        try {
            p.validate();
        } catch (const ValidationError& e) {
            fail(n, path, e.what());
        }
        return p;
    }

    std::map<Exponents, Rational> polynomial(const std::vector<std::string>& names, const std::string& text,
                                             const std::string& where) const
    {
        std::map<Exponents, Rational> out;
        if (trim(text) == "0")
            return out;
        for (const auto& [sign, term] : split_terms(text, where)) {
            Rational c = sign;
            Exponents e(names.size(), 0);
            for (const auto& f : split(term, '*')) {
                if (starts_numeric(f)) {
                    c *= parse_rational_field(f, where);
                    continue;
                }
                const auto parts = split(f, '^');
                auto it = std::find(names.begin(), names.end(), parts[0]);
                if (it == names.end() || parts.size() > 2)
                    throw ValidationError("unknown factor '" + f + "' in '" + text + "'", where);
                unsigned k = 1;
                if (parts.size() == 2) {
                    if (!starts_numeric(parts[1]))
                        throw ValidationError("bad exponent in '" + f + "'", where);
                    k = static_cast<unsigned>(std::stoul(parts[1]));
                }
                e[static_cast<std::size_t>(it - names.begin())] += k;
            }
            out[e] += c;
            if (out[e] == 0)
                out.erase(e);
        }
        return out;
    }

    DgaConfig dga(const GroupPtr& g, const YAML::Node& n) const
    {
        DgaConfig out;
        const bool explicit_form = static_cast<bool>(n["basis"]);
        if (explicit_form)
            keys(n, "dga", {"cutoff", "basis", "differential", "products", "action", "V"});
        else
            keys(n, "dga", {"cutoff", "generators", "differential", "action", "V"});
        const int cutoff = integer(required(n, "cutoff", "dga"), "dga.cutoff");
        if (cutoff < 0)
            fail(n["cutoff"], "dga.cutoff", "cutoff must be nonnegative");
        try {
            out.dga = explicit_form ? explicit_dga(g, n, cutoff) : free_dga(g, n, cutoff);
        } catch (const WindowError& e) {
            fail(n, "dga", e.what());
        } catch (const ValidationError& e) {
            if (!e.where().empty())
                throw;
            fail(n, "dga", e.what());
        }
        const YAML::Node v = required(n, "V", "dga");
        keys(v, "dga.V", {"generators", "action"});
        out.v = generator_space(g, v, "dga.V");
        for (std::size_t i = 0; i < out.v.size(); ++i)
            if (out.v.degrees[i] == 0)
                fail(v, "dga.V", "V has a degree-0 part (" + out.v.names[i] +
                                     "); only negatively graded V is supported");
        try {
            build_ring(out.v, g);
        } catch (const ValidationError& e) {
            fail(v, "dga.V", e.what());
        }
        return out;
    }

    EquivariantDGA free_dga(const GroupPtr& g, const YAML::Node& n, int cutoff) const
    {
        FreeCdgaSpec spec;
        spec.group = g;
        spec.cutoff = cutoff;
        GeneratorSpace gs = generator_space(g, n, "dga");
        spec.names = gs.names;
        spec.degrees = gs.degrees;
        spec.action = gs.action;
        if (const YAML::Node d = n["differential"]) {
            if (!d.IsMap())
                fail(d, "dga.differential", "expected a mapping from generators to polynomials");
            for (const auto& kv : d) {
                const std::string name = kv.first.as<std::string>();
                const std::string dp = "dga.differential." + name;
                auto it = std::find(spec.names.begin(), spec.names.end(), name);
                if (it == spec.names.end())
                    fail(kv.first, dp, "unknown generator '" + name + "'");
                spec.differential[static_cast<std::size_t>(it - spec.names.begin())] =
                    polynomial(spec.names, scalar(kv.second, dp), where(kv.second, dp));
            }
        }
        return free_cdga(spec);
    }

    EquivariantDGA explicit_dga(const GroupPtr& g, const YAML::Node& n, int cutoff) const
    {
        EquivariantDGA c(g, cutoff);
        const YAML::Node basis = n["basis"];
        if (!basis.IsMap())
            fail(basis, "dga.basis", "expected a mapping from degrees to label lists");
        for (const auto& kv : basis) {
            const std::string bp = "dga.basis." + kv.first.as<std::string>();
            const int deg = integer(kv.first, bp);
            if (deg > 0 || deg < -cutoff - 1)
                fail(kv.first, bp, "degree outside [" + std::to_string(-cutoff - 1) + ", 0]");
            if (!kv.second.IsSequence())
                fail(kv.second, bp, "expected a list of labels");
            std::vector<std::string> labels;
            for (std::size_t i = 0; i < kv.second.size(); ++i) {
                labels.push_back(scalar(kv.second[i], bp));
                if (c.find(labels.back()) ||
                    std::count(labels.begin(), labels.end(), labels.back()) > 1)
                    fail(kv.second[i], bp, "duplicate label '" + labels.back() + "'");
            }
            c.set_degree(deg, std::move(labels));
        }
        c.fill_defaults();
        auto locate = [&](const YAML::Node& node, const std::string& p, const std::string& label) {
            auto at = c.find(label);
            if (!at)
                fail(node, p, "unknown basis label '" + label + "'");
            return *at;
        };
        if (const YAML::Node d = n["differential"]) {
            std::map<int, Matrix> mats;
            for (const auto& kv : d) {
                const std::string label = kv.first.as<std::string>();
                const std::string dp = "dga.differential." + label;
                auto [deg, k] = locate(kv.first, dp, label);
                if (deg - 1 < -cutoff - 1)
                    fail(kv.first, dp, "differential leaves the stored range");
                if (!mats.count(deg))
                    mats[deg] = Matrix(c.dim(deg - 1), c.dim(deg));
                mats[deg].set_column(k, parse_linear_combination(c.labels(deg - 1), scalar(kv.second, dp),
                                                                 where(kv.second, dp)));
            }
            for (auto& [deg, m] : mats)
                c.set_differential(deg, std::move(m));
        }
        if (const YAML::Node a = n["action"]) {
            for (const auto& kv : a) {
                const std::string ap = "dga.action." + kv.first.as<std::string>();
                const std::size_t w = element(g, kv.first, ap);
                std::map<int, Matrix> mats;
                for (const auto& lv : kv.second) {
                    const std::string label = lv.first.as<std::string>();
                    auto [deg, k] = locate(lv.first, ap, label);
                    if (!mats.count(deg))
                        mats[deg] = Matrix::identity(c.dim(deg));
                    mats[deg].set_column(k, parse_linear_combination(c.labels(deg), scalar(lv.second, ap),
                                                                     where(lv.second, ap)));
                }
                for (auto& [deg, m] : mats)
                    c.set_action(w, deg, std::move(m));
            }
        }
        if (const YAML::Node pr = n["products"]) {
            for (const auto& kv : pr) {
                const std::string key = kv.first.as<std::string>();
                const std::string pp = "dga.products." + key;
                const auto factors = split(key, '*');
                if (factors.size() != 2)
                    fail(kv.first, pp, "product keys have the form 'a*b'");
                auto [da, ia] = locate(kv.first, pp, factors[0]);
                auto [db, ib] = locate(kv.first, pp, factors[1]);
                if (da + db < -cutoff - 1)
                    fail(kv.first, pp, "product leaves the stored range");
                const Vector v =
                    parse_linear_combination(c.labels(da + db), scalar(kv.second, pp), where(kv.second, pp));
                const Rational sign = (std::abs(da) % 2 == 1 && std::abs(db) % 2 == 1) ? -1 : 1;
                Matrix ab = c.product(da, db);
                ab.set_column(ia * c.dim(db) + ib, v);
                c.set_product(da, db, ab);
                Matrix ba = c.product(db, da);
                Vector sv = v;
                for (auto& x : sv)
                    x *= sign;
                ba.set_column(ib * c.dim(da) + ia, sv);
                c.set_product(db, da, ba);
            }
        }
        c.validate();
        return c;
    }

    SessionConfig session(const YAML::Node& root) const
    {
        SessionConfig s;
        s.source = source;
        if (!root || root.IsNull())
            throw ValidationError("syntax error: empty configuration", source);
        unique_keys(root, "<root>");
        keys(root, "<root>", {"group", "ring", "representations", "modules", "window", "dga", "commands"});
        s.group = group(required(root, "group", "<root>"));
        if (const YAML::Node r = root["ring"])
            s.ring = ring(s.group, r);
        else
            s.ring = build_ring(GeneratorSpace{}, s.group);
        if (const YAML::Node reps = root["representations"]) {
            if (!reps.IsMap())
                fail(reps, "representations", "expected a mapping");
            for (const auto& kv : reps) {
                const std::string name = kv.first.as<std::string>();
                if (name == "regular" || name == "trivial")
                    fail(kv.first, "representations." + name, "'" + name + "' is reserved");
                s.representations.emplace(name, representation(s.group, kv.second, "representations." + name));
            }
        }
        if (const YAML::Node mods = root["modules"]) {
            if (!mods.IsMap())
                fail(mods, "modules", "expected a mapping");
            for (const auto& kv : mods) {
                const std::string name = kv.first.as<std::string>();
                if (s.modules.count(name))
                    fail(kv.first, "modules." + name, "duplicate module");
                s.modules.emplace(name, module(s, name, kv.second));
                s.module_order.push_back(name);
            }
        }
        if (const YAML::Node w = root["window"]) {
            keys(w, "window", {"t_min", "t_max", "margin"});
            const int lo = integer(required(w, "t_min", "window"), "window.t_min");
            const int hi = integer(required(w, "t_max", "window"), "window.t_max");
            if (lo > hi)
                fail(w, "window", "t_min exceeds t_max");
            s.window = std::make_pair(lo, hi);
            if (w["margin"]) {
                s.margin = integer(w["margin"], "window.margin");
                if (*s.margin < 0)
                    fail(w["margin"], "window.margin", "margin must be nonnegative");
            }
        }
        if (const YAML::Node d = root["dga"])
            s.dga = dga(s.group, d);
        if (const YAML::Node cmds = root["commands"]) {
            keys(cmds, "commands", {"ext", "koszul", "resolve", "torsion", "formality", "chart"});
            for (const auto& kv : cmds) {
                const std::string cmd = kv.first.as<std::string>();
                if (kv.second.IsNull())
                    continue;
                keys(kv.second, "commands." + cmd, {"M", "N"});
                for (const auto& pv : kv.second) {
                    const std::string key = pv.first.as<std::string>();
                    const std::string value = scalar(pv.second, "commands." + cmd + "." + key);
                    if (!s.modules.count(value))
                        fail(pv.second, "commands." + cmd + "." + key, "unknown module '" + value + "'");
                    s.commands[cmd][key] = value;
                }
            }
        }
        return s;
    }
};

}  // namespace

Rational parse_rational_field(const std::string& text, const std::string& where)
{
    try {
        return parse_rational(trim(text));
    } catch (const ValidationError& e) {
        throw ValidationError(e.what(), where);
    }
}

FreeElement parse_free_element(const FreeModule& f, const std::string& text)
{
    FreeElement out;
    if (trim(text) == "0")
        return out;
    const RingPtr& R = f.ring();
    const auto& names = R->generators().names;
    for (const auto& [sign, term] : split_terms(text, {})) {
        const auto factors = split(term, '*');
        Rational c = sign;
        RingElement a = R->one();
        std::optional<std::size_t> u;
        for (std::size_t k = 0; k < factors.size(); ++k) {
            const std::string& fac = factors[k];
            if (fac.empty())
                throw ValidationError("empty factor in '" + term + "'");
            if (k + 1 == factors.size()) {
                for (std::size_t v = 0; v < f.u_count(); ++v)
                    if (f.u_label(v) == fac)
                        u = v;
                if (!u)
                    throw ValidationError("term '" + term + "' must end with a generator label of the module; '" +
                                          fac + "' is not one");
                break;
            }
            if (starts_numeric(fac)) {
                c *= parse_rational_field(fac, {});
                continue;
            }
            const auto parts = split(fac, '^');
            if (parts.size() > 2)
                throw ValidationError("bad factor '" + fac + "'");
            unsigned e = 1;
            if (parts.size() == 2) {
                if (!starts_numeric(parts[1]))
                    throw ValidationError("bad exponent in '" + fac + "'");
                e = static_cast<unsigned>(std::stoul(parts[1]));
            }
            auto gi = std::find(names.begin(), names.end(), parts[0]);
            if (gi != names.end()) {
                const RingElement x = R->generator(static_cast<std::size_t>(gi - names.begin()));
                for (unsigned j = 0; j < e; ++j)
                    a = R->multiply(a, x);
            } else if (auto w = R->group()->find(parts[0])) {
                for (unsigned j = 0; j < e; ++j)
                    a = R->multiply(a, R->group_element(*w));
            } else {
                throw ValidationError("unknown factor '" + fac + "' (not a ring generator or group element)");
            }
        }
        for (const auto& [t, v] : f.ring_times(a, *u))
            add_to(out, t, c * v);
    }
    return out;
}

Vector parse_linear_combination(const std::vector<std::string>& labels, const std::string& text,
                                const std::string& where)
{
    Vector v(labels.size());
    if (trim(text) == "0")
        return v;
    for (const auto& [sign, term] : split_terms(text, where)) {
        Rational c = sign;
        std::string label = term;
        if (starts_numeric(term)) {
            const auto star = term.find('*');
            if (star == std::string::npos)
                throw ValidationError("term '" + term + "' names no basis element", where);
            c *= parse_rational_field(term.substr(0, star), where);
            label = trim(term.substr(star + 1));
        }
        auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end())
            throw ValidationError("'" + label + "' is not a basis element of the target degree", where);
        v[static_cast<std::size_t>(it - labels.begin())] += c;
    }
    return v;
}

SessionConfig parse_config_string(const std::string& text, const std::string& source)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ValidationError("syntax error: " + e.msg,
                              source + ":" + std::to_string(e.mark.line + 1));
    }
    return Parser{source}.session(root);
}

SessionConfig parse_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open config file", path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_string(ss.str(), path);
}

}  // namespace freeq
