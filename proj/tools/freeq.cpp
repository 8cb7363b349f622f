#include <freeq/cache.hpp>
#include <freeq/config.hpp>
#include <freeq/errors.hpp>
#include <freeq/ext.hpp>
#include <freeq/report.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using namespace freeq;

namespace {

struct Options {
    std::string command;
    std::string config;
    std::string window;
    std::optional<int> margin;
    std::string json_path;
    std::string chart_path;
    std::string m;
    std::string n;
    bool no_cache = false;
};

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw ValidationError("cannot write " + path);
    out << text;
}

std::pair<int, int> parse_window(const std::string& text)
{
    const auto colon = text.find(':', 1);
    if (colon == std::string::npos)
        throw ValidationError("--window expects MIN:MAX, got '" + text + "'");
    try {
        std::size_t p1 = 0, p2 = 0;
        const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
        const int lo = std::stoi(a, &p1);
        const int hi = std::stoi(b, &p2);
        if (p1 != a.size() || p2 != b.size())
            throw std::invalid_argument("trailing characters");
        if (lo > hi)
            throw ValidationError("--window: MIN exceeds MAX");
        return {lo, hi};
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw ValidationError("--window expects MIN:MAX, got '" + text + "'");
    }
}

class Session {
public:
    Session(const Options& o) : m_opt(o), m_cfg(parse_config(o.config))
    {
        if (!o.no_cache)
            m_cache.emplace(ResolutionCache::default_dir());
    }

    const SessionConfig& config() const { return m_cfg; }

    std::pair<int, int> range() const
    {
        if (!m_opt.window.empty())
            return parse_window(m_opt.window);
        if (m_cfg.window)
            return *m_cfg.window;
        return {-10, 10};
    }

    DegreeWindow window(const std::vector<const Presentation*>& modules) const
    {
        const auto [lo, hi] = range();
        DegreeWindow w{lo, hi, 0};
        if (m_opt.margin)
            w.margin = *m_opt.margin;
        else if (m_cfg.margin)
            w.margin = *m_cfg.margin;
        else
            for (const auto* p : modules)
                w.margin = std::max(w.margin, default_margin(*p));
        w.validate();
        return w;
    }

    const Presentation& module(const std::string& flag, const std::string& command, const std::string& key) const
    {
        std::string name = flag.empty() ? m_cfg.command_parameter(command, key) : flag;
        if (name.empty())
            throw ValidationError("command '" + command + "' needs module " + key + " (flag or commands." + command +
                                  "." + key + " in the config)");
        return m_cfg.module(name);
    }

    ProjectiveComplex resolution(const Presentation& m, int floor) const
    {
        return cached_resolution(m, floor, m_cache ? &*m_cache : nullptr);
    }

private:
    const Options& m_opt;
    SessionConfig m_cfg;
    std::optional<ResolutionCache> m_cache;
};

struct Output {
    Json json;
    std::string chart;
};

ExtTable run_ext_table(const Session& s, const Presentation& m, const Presentation& n, const DegreeWindow& w)
{
    const ProjectiveComplex res = s.resolution(m, resolution_floor(m, w));
    return ext_from_resolution(res, realize(n, w.lo(), w.hi()), w.t_min, w.t_max);
}

Output cmd_ext(const Session& s, const Options& o)
{
    const Presentation& m = s.module(o.m, "ext", "M");
    const Presentation& n = s.module(o.n, "ext", "N");
    const DegreeWindow w = s.window({&m, &n});
    const ExtTable table = run_ext_table(s, m, n, w);
    Json j = to_json(table);
    j["command"] = "ext";
    j["M"] = m.name;
    j["N"] = n.name;
    j["margin"] = w.margin;
    return {j, render_chart(table)};
}

Output cmd_chart(const Session& s, const Options& o)
{
    const Presentation& m = s.module(o.m, "chart", "M");
    const Presentation& n = s.module(o.n, "chart", "N");
    const DegreeWindow w = s.window({&m, &n});
    const AdamsE2Report rep = adams_e2_report(run_ext_table(s, m, n, w));
    Json j = to_json(rep);
    j["command"] = "chart";
    j["M"] = m.name;
    j["N"] = n.name;
    j["margin"] = w.margin;
    return {j, render_chart(rep)};
}

Output cmd_koszul(const Session& s, const Options&)
{
    const RingPtr& ring = s.config().ring;
    const auto [lo, hi] = s.range();
    const ProjectiveComplex k = koszul_complex(ring);
    const RealizedComplex rc = realize(k, lo, hi);
    const ExactnessReport ex = verify_exactness(rc);
    const ExactnessReport dual_ex = verify_exactness(dual_complex(rc));
    Json ranks = Json::array();
    for (std::size_t i = 0; i <= k.length(); ++i)
        ranks.push_back(to_json(k.rank(i)));
    Json j = {{"command", "koszul"},
              {"complex", to_json(k)},
              {"ranks", ranks},
              {"exactness", to_json(ex)},
              {"equivariant", check_equivariance(rc)},
              {"dual_exactness", to_json(dual_ex)},
              {"verdict", ex.exact ? "exact" : "not exact"}};
    return {j, {}};
}

Output cmd_resolve(const Session& s, const Options& o)
{
    const Presentation& m = s.module(o.m, "resolve", "M");
    const DegreeWindow w = s.window({&m});
    const int floor = resolution_floor(m, w);
    const ProjectiveComplex res = s.resolution(m, floor);
    const int top = std::max(w.t_max, m.top_degree() == INT_MIN ? w.t_max : m.top_degree());
    const ExactnessReport ex = verify_exactness(realize(res, floor, top));
    Json j = {{"command", "resolve"},
              {"M", m.name},
              {"floor", floor},
              {"complex", to_json(res)},
              {"minimal", is_minimal(res)},
              {"length_within_r", res.length() <= s.config().ring->rank()},
              {"exactness", to_json(ex)}};
    return {j, {}};
}

Output cmd_torsion(const Session& s, const Options& o)
{
    const Presentation& m = s.module(o.m, "torsion", "M");
    const DegreeWindow w = s.window({&m});
    const GradedModule real = realize(m, w.lo(), w.hi());
    const TorsionResult t = torsion_submodule(real, w.t_min, w.t_max);
    bool all = true, zero = true;
    for (int d = w.t_min; d <= w.t_max; ++d) {
        all = all && t.torsion.dim(d) == real.dim(d);
        zero = zero && t.torsion.dim(d) == 0;
    }
    Json j = {{"command", "torsion"},
              {"M", m.name},
              {"margin", w.margin},
              {"torsion", to_json(t, w.t_min, w.t_max)},
              {"torsion_is_zero", zero},
              {"is_torsion", all}};
    return {j, {}};
}

Output cmd_formality(const Session& s, const Options&)
{
    if (!s.config().dga)
        throw ValidationError("command 'formality' needs a dga block in the config");
    const DgaConfig& d = *s.config().dga;
    const FormalityMap f = build_formality_map(d.dga, d.v);
    const QuasiIsoReport r = verify_quasi_iso(d.dga, f, d.dga.cutoff());
    Json j = to_json(d.dga, f, r);
    j["command"] = "formality";
    j["cutoff"] = d.dga.cutoff();
    return {j, {}};
}

int exit_code(const std::exception& e)
{
    if (dynamic_cast<const WindowError*>(&e))
        return 3;
    if (dynamic_cast<const ValidationError*>(&e))
        return 2;
    return 4;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact Ext, Koszul and formality computations over twisted group rings Q[x_1..x_r][W]"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--config", o.config, "session config (YAML)")->required();
    app.add_option("--window", o.window, "reported degree range MIN:MAX");
    app.add_option("--margin", o.margin, "extra degrees realized on each side")->check(CLI::NonNegativeNumber);
    app.add_option("--json", o.json_path, "write the JSON report here instead of stdout");
    app.add_option("--chart", o.chart_path, "write the ASCII chart here");
    app.add_flag("--no-cache", o.no_cache, "do not read or write the resolution cache");

    struct Command {
        const char* name;
        const char* help;
        bool takes_m;
        bool takes_n;
        Output (*run)(const Session&, const Options&);
    };
    const Command commands[] = {
        {"ext", "bigraded Ext^{s,t}(M, N)", true, true, cmd_ext},
        {"chart", "Ext chart with sparsity analysis", true, true, cmd_chart},
        {"koszul", "Koszul complex of the ring and its exactness", false, false, cmd_koszul},
        {"resolve", "minimal resolution of M", true, false, cmd_resolve},
        {"torsion", "m-power torsion submodule of M", true, false, cmd_torsion},
        {"formality", "formality map for the dga block", false, false, cmd_formality},
    };
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        if (c.takes_m)
            sub->add_option("-M,--module", o.m, "source module name");
        if (c.takes_n)
            sub->add_option("-N,--target", o.n, "target module name");
        sub->callback([&o, name = c.name] { o.command = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    auto emit_json = [&](const Json& j) {
        if (o.json_path.empty())
            std::cout << dump(j);
        else
            write_file(o.json_path, dump(j));
    };
    try {
        const Session session(o);
        Output out;
        for (const auto& c : commands)
            if (o.command == c.name)
                out = c.run(session, o);
        emit_json(out.json);
        if (!out.chart.empty()) {
            if (!o.chart_path.empty())
                write_file(o.chart_path, out.chart);
            else if (!o.json_path.empty())
                std::cout << out.chart;
        }
        if (o.command == "formality" && !o.json_path.empty())
            std::cout << out.json.at("verdict").get<std::string>() << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "freeq: " << e.what() << "\n";
        try {
            emit_json(error_json(e));
        } catch (const std::exception&) {
        }
        return exit_code(e);
    }
}
