#include "support.hpp"

#include <freeq/cache.hpp>
#include <freeq/config.hpp>
#include <freeq/errors.hpp>
#include <freeq/ext.hpp>
#include <freeq/formality.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace freeq;
using namespace freeq::testing;

namespace {

using Dims = std::map<std::pair<int, int>, std::size_t>;

std::string config_path(const std::string& name)
{
    return std::string(FREEQ_SOURCE_DIR) + "/configs/" + name;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome fail(std::string why)
{
    return {false, std::move(why)};
}

Dims restricted(const Dims& d, int t_min, int t_max)
{
    Dims out;
    for (const auto& [k, v] : d)
        if (k.second >= t_min && k.second <= t_max)
            out[k] = v;
    return out;
}

std::string show(const Dims& d)
{
    std::ostringstream os;
    os << "{";
    for (const auto& [k, v] : d)
        os << "(" << k.first << "," << k.second << "):" << v << " ";
    os << "}";
    return os.str();
}

// Criterion 1 at a given window and margin.
Dims o2_table(int t_min, int t_max, int margin)
{
    const RingPtr R = o2_ring();
    return ext_table(group_ring_module(R), group_ring_module(R), DegreeWindow{t_min, t_max, margin}).dims();
}

Outcome criterion1()
{
    const Dims d = o2_table(-10, 10, default_margin(group_ring_module(o2_ring())));
    const Dims expect{{{0, 0}, 2}, {{1, 2}, 2}};
    if (d != expect)
        return fail("got " + show(d));
    return {true, "dims (0,0):2 (1,2):2"};
}

Outcome criterion2()
{
    for (std::size_t r = 1; r <= 3; ++r) {
        const ProjectiveComplex k = koszul_complex(polynomial_ring(r));
        long binom = 1;
        for (std::size_t s = 0; s <= r; ++s) {
            if (k.rank(s) != binom)
                return fail("r=" + std::to_string(r) + " rank F_" + std::to_string(s));
            binom = binom * static_cast<long>(r - s) / static_cast<long>(s + 1);
        }
        const RealizedComplex rc = realize(k, -12, 0);
        const ExactnessReport ex = verify_exactness(rc);
        if (!ex.exact)
            return fail("r=" + std::to_string(r) + " not exact");
    }
    return {true, "r=1,2,3 binomial ranks, exact on [-12,0]"};
}

std::vector<RingPtr> small_rings()
{
    const GroupPtr z2 = builtin_group("Z2");
    const RingPtr neg2 = build_ring({{"x1", "x2"}, {-2, -4}, rep_from(z2, 2, {{"w", Matrix{{-1, 0}, {0, -1}}}})}, z2);
    return {o2_ring(), polynomial_ring(1), swap_ring(), polynomial_ring(2), neg2};
}

Outcome criterion3()
{
    std::mt19937 rng(2024);
    const auto rings = small_rings();
    int full_length = 0, nonzero_top = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const RingPtr& R = rings[static_cast<std::size_t>(trial) % rings.size()];
        const Presentation t = random_torsion(R, rng, 2 * static_cast<int>(rng() % 2));
        const Presentation n = random_torsion(R, rng, 2 * static_cast<int>(rng() % 2));
        const DegreeWindow w{-8, 8, std::max(default_margin(t), default_margin(n))};
        try {
            const ProjectiveComplex res = minimal_free_resolution(t, resolution_floor(t, w));
            if (res.length() > R->rank())
                return fail("trial " + std::to_string(trial) + ": resolution longer than r");
            if (!verify_exactness(realize(res, w.lo(), w.hi())).exact)
                return fail("trial " + std::to_string(trial) + ": resolution not exact");
            const ExtTable e = ext_from_resolution(res, realize(n, w.lo(), w.hi()), w.t_min, w.t_max);
            full_length += res.length() == R->rank() ? 1 : 0;
            bool top = false;
            for (const auto& [k, v] : e.dims()) {
                if (k.first > static_cast<int>(R->rank()))
                    return fail("trial " + std::to_string(trial) + ": nonzero row above r");
                top = top || k.first == static_cast<int>(R->rank());
            }
            nonzero_top += top ? 1 : 0;
        } catch (const std::exception& ex) {
            return fail("trial " + std::to_string(trial) + ": " + ex.what());
        }
    }
    return {true, "50 random torsion modules, r in {1,2}; " + std::to_string(full_length) +
                      " resolutions of length r, " + std::to_string(nonzero_top) + " tables reach row r"};
}

std::vector<std::pair<std::string, Presentation>> change_of_rings_targets()
{
    const RingPtr R = o2_ring();
    std::vector<std::pair<std::string, Presentation>> out = {
        {"QW", group_ring_module(R)},
        {"S^-3 QW", suspend(group_ring_module(R), -3)},
        {"S^4 QW", suspend(group_ring_module(R), 4)},
        {"R[W]", free_rank_one(R)},
    };
    const SessionConfig cfg = parse_config(config_path("o2_torsion.cfg"));
    for (const char* name : {"T2", "Tmix", "Tsign", "Tsum"})
        out.push_back({name, cfg.module(name)});
    return out;
}

Outcome criterion4_at(int scale, std::vector<Dims>* tables)
{
    for (const auto& [name, n] : change_of_rings_targets()) {
        const DegreeWindow w{-10 * scale, 10 * scale, scale * std::max(default_margin(n), 8)};
        const ChangeOfRingsReport r = change_of_rings_check(n, w);
        if (!r.agree)
            return fail(name + ": twisted " + show(r.twisted.dims()) + " vs untwisted " + show(r.untwisted.dims()));
        if (tables)
            tables->push_back(restricted(r.twisted.dims(), -10, 10));
    }
    return {true, "QW, S^d QW, R[W], T2, Tmix, Tsign, Tsum agree"};
}

Outcome criterion4()
{
    return criterion4_at(1, nullptr);
}

// Random module that is usually not torsion: a torsion piece plus a
// suspended free or half-killed cyclic module.
Presentation random_module(const RingPtr& R, std::mt19937& rng)
{
    const Presentation t = random_torsion(R, rng, 2 * static_cast<int>(rng() % 2));
    Presentation other = rng() % 2 == 0 ? suspend(free_rank_one(R), 2 * static_cast<int>(rng() % 2))
                                        : quotient_of_free(R, "H", 0, {term(0, power(R->rank(), 0, 2))});
    return direct_sum(t, other);
}

// Pairs of (dim Hom(T, M)_t, dim Hom(T, Gamma M)_t) for t in [-4, 4].
Outcome criterion5_at(int scale, std::vector<std::vector<std::size_t>>* dims)
{
    std::mt19937 rng(77);
    const auto rings = small_rings();
    int nonzero = 0, non_torsion = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const RingPtr& R = rings[static_cast<std::size_t>(trial) % rings.size()];
        const Presentation t = random_torsion(R, rng);
        const Presentation m = random_module(R, rng);
        const GradedModule real = realize(m, -40 * scale, 12 * scale);
        const TorsionResult gamma = torsion_submodule(real, -16 * scale, 8 * scale);
        non_torsion += gamma.torsion.dim(-16) == real.dim(-16) ? 0 : 1;
        std::vector<std::size_t> row;
        for (int d = -4; d <= 4; ++d) {
            const std::size_t a = hom_graded(t, real, d).dim();
            const std::size_t b = hom_graded(t, gamma.torsion, d).dim();
            if (a != b)
                return fail("trial " + std::to_string(trial) + " t=" + std::to_string(d) + ": " + std::to_string(a) +
                            " vs " + std::to_string(b));
            nonzero += a != 0 ? 1 : 0;
            row.push_back(a);
        }
        if (dims)
            dims->push_back(std::move(row));
    }
    return {true, "20 random pairs, t in [-4,4]; " + std::to_string(non_torsion) + " M not torsion, " +
                      std::to_string(nonzero) + " nonzero Hom groups"};
}

Outcome criterion5()
{
    return criterion5_at(1, nullptr);
}

Outcome maschke_checks(const Matrix& p, const Representation& source, const Representation& target,
                       const std::string& what)
{
    const Matrix s = maschke_split(p, source, target);
    if (!(p * s).is_identity())
        return fail(what + ": p s != 1");
    if (!is_equivariant(s, target, source))
        return fail(what + ": section not equivariant");
    return {true, {}};
}

Outcome criterion6()
{
    std::size_t count = 0;
    for (const char* file : {"reps_z2.cfg", "reps_v4.cfg", "reps_s3.cfg"}) {
        const SessionConfig cfg = parse_config(config_path(file));
        std::vector<std::pair<std::string, Representation>> reps(cfg.representations.begin(),
                                                                 cfg.representations.end());
        reps.push_back({"regular", Representation::regular(cfg.group)});
        reps.push_back({"trivial", Representation::trivial(cfg.group)});
        for (const auto& [name, rho] : reps) {
            const std::string what = std::string(file) + ":" + name;
            const std::size_t n = rho.dim();
            const Matrix e = averaging_idempotent(rho);
            if (!(e * e == e))
                return fail(what + ": e^2 != e");
            if (!is_equivariant(e, rho, rho))
                return fail(what + ": e not equivariant");
            // Projection of rho + regular onto rho.
            const Representation reg = Representation::regular(cfg.group);
            Matrix proj = Matrix::identity(n).hstack(Matrix(n, reg.dim()));
            if (auto o = maschke_checks(proj, direct_sum(rho, reg), rho, what + " projection"); !o.pass)
                return o;
            // Sum map rho + rho -> rho.
            if (auto o = maschke_checks(Matrix::identity(n).hstack(Matrix::identity(n)), direct_sum(rho, rho), rho,
                                        what + " sum");
                !o.pass)
                return o;
            // Coinvariant quotient of rho.
            const QuotientMap q(n, Matrix::identity(n) - e);
            if (q.dim() > 0)
                if (auto o = maschke_checks(q.matrix(), rho, quotient(rho, q), what + " coinvariants"); !o.pass)
                    return o;
            ++count;
        }
    }
    return {true, std::to_string(count) + " representations of Z2, Z2xZ2, S3"};
}

Outcome criterion7()
{
    const SessionConfig cfg = parse_config(config_path("c1.cfg"));
    if (!cfg.dga || cfg.dga->dga.cutoff() != 12)
        return fail("c1.cfg does not define a cutoff 12 dga");
    const EquivariantDGA& c = cfg.dga->dga;
    const FormalityMap f = build_formality_map(c, cfg.dga->v);
    const QuasiIsoReport r = verify_quasi_iso(c, f, 12);
    if (!r.assignment_in_cycles)
        return fail("image generators are not cycles");
    if (!r.assignment_equivariant)
        return fail("assignment not equivariant");
    for (const auto& d : r.degrees)
        if (!d.pass)
            return fail("degree " + std::to_string(d.n) + " fails");
    if (!r.pass)
        return fail("quasi-iso check failed");
    return {true, "quasi-iso in every degree of [-12,0]"};
}

Outcome criterion8()
{
    const RingPtr R = o2_ring();
    for (int d : {-3, 0, 5})
        if (recognize_cell(realize(suspend(group_ring_module(R), d), -8, 8)) != d)
            return fail("S^" + std::to_string(d) + " QW not recognized");
    if (recognize_cell(realize(trivial_module(R), -8, 8)))
        return fail("trivial module recognized");
    if (recognize_cell(realize(direct_sum(trivial_module(R), trivial_module(R)), -8, 8)))
        return fail("trivial + trivial recognized");
    return {true, "d = -3, 0, 5 recognized; Q and Q+Q rejected"};
}

Outcome criterion9()
{
    const int m = default_margin(group_ring_module(o2_ring()));
    if (restricted(o2_table(-20, 20, 2 * m), -10, 10) != o2_table(-10, 10, m))
        return fail("criterion 1 table changed");
    std::vector<Dims> base, doubled;
    if (auto o = criterion4_at(1, &base); !o.pass)
        return o;
    if (auto o = criterion4_at(2, &doubled); !o.pass)
        return o;
    if (base != doubled)
        return fail("criterion 4 tables changed");
    std::vector<std::vector<std::size_t>> h1, h2;
    if (auto o = criterion5_at(1, &h1); !o.pass)
        return o;
    if (auto o = criterion5_at(2, &h2); !o.pass)
        return o;
    if (h1 != h2)
        return fail("criterion 5 dimensions changed");
    return {true, "criteria 1, 4, 5 unchanged at doubled window and margin"};
}

std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome criterion10()
{
    const auto tmp = std::filesystem::temp_directory_path() / ("freeq-accept-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(tmp);
    std::size_t runs = 0;
    Outcome result{true, {}};
    for (const auto& entry : std::filesystem::directory_iterator(std::string(FREEQ_SOURCE_DIR) + "/configs")) {
        if (entry.path().extension() != ".cfg")
            continue;
        const SessionConfig cfg = parse_config(entry.path().string());
        std::vector<std::string> commands = {"koszul"};
        for (const auto& [cmd, params] : cfg.commands)
            commands.push_back(cmd);
        if (cfg.dga)
            commands.push_back("formality");
        for (const auto& cmd : commands) {
            std::string outputs[2];
            for (int k = 0; k < 2; ++k) {
                const auto json = tmp / ("run" + std::to_string(k) + ".json");
                const std::string line = "FREEQ_CACHE_DIR=" + (tmp / "cache").string() + " " + FREEQ_CLI +
                                         " --config " + entry.path().string() + " --json " + json.string() +
                                         " --chart " + (tmp / "chart.txt").string() + " " + cmd + " >/dev/null 2>&1";
                if (std::system(line.c_str()) != 0) {
                    result = fail(entry.path().filename().string() + " " + cmd + " exited nonzero");
                    break;
                }
                outputs[k] = read_file(json);
            }
            if (!result.pass)
                break;
            if (outputs[0].empty() || outputs[0] != outputs[1]) {
                result = fail(entry.path().filename().string() + " " + cmd + " differs between runs");
                break;
            }
            ++runs;
        }
        if (!result.pass)
            break;
    }
    std::filesystem::remove_all(tmp);
    if (result.pass)
        result.detail = std::to_string(runs) + " config/command pairs byte-identical";
    return result;
}

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "O(2) Ext(QW, QW) pattern", 1.0, criterion1},
        {2, "Koszul exactness r = 1, 2, 3", 5.0, criterion2},
        {3, "vanishing above row r", 60.0, criterion3},
        {4, "change of rings", 10.0, criterion4},
        {5, "torsion adjunction", 30.0, criterion5},
        {6, "Maschke suite", 5.0, criterion6},
        {7, "formality of C1", 5.0, criterion7},
        {8, "cell recognition", 1.0, criterion8},
        {9, "window robustness", 0.0, criterion9},
        {10, "determinism", 0.0, criterion10},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char timing[64];
        if (c.limit_seconds > 0) {
            std::snprintf(timing, sizeof timing, "%.3f s, limit %.0f s", secs, c.limit_seconds);
            if (o.pass && secs >= c.limit_seconds)
                o = fail("over time limit");
        } else {
            std::snprintf(timing, sizeof timing, "%.3f s", secs);
        }
        failures += o.pass ? 0 : 1;
        std::cout << "criterion " << c.id << " " << (o.pass ? "PASS" : "FAIL") << "  " << c.name << ": " << o.detail
                  << " (" << timing << ")" << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
    return failures == 0 ? 0 : 1;
}
