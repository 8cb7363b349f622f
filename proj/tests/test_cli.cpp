#include <json.hpp>

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

namespace {

using Json = nlohmann::json;

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string("FREEQ_CACHE_DIR=") + FREEQ_TEST_CACHE + " " + FREEQ_CLI + " " + args +
                            " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
        r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string cfg(const std::string& name)
{
    return std::string("--config ") + FREEQ_SOURCE_DIR + "/configs/" + name;
}

}  // namespace

TEST_SUITE("cli")
{
TEST_CASE("ext on the O(2) config")
{
    const Run r = run(cfg("o2.cfg") + " ext -M QW -N QW");
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    std::map<std::pair<int, int>, int> dims;
    for (const auto& e : j["entries"])
        dims[{e["s"].get<int>(), e["t"].get<int>()}] = e["dim"].get<int>();
    CHECK(dims == std::map<std::pair<int, int>, int>{{{0, 0}, 2}, {{1, 2}, 2}});
}

TEST_CASE("free module input gives a row zero table")
{
    const Run r = run(cfg("o2.cfg") + " ext -M RW -N QW");
    REQUIRE(r.code == 0);
    for (const auto& e : Json::parse(r.out)["entries"])
        CHECK(e["s"] == 0);
}

TEST_CASE("undersized window gives a window error")
{
    const Run r = run(cfg("o2.cfg") + " --window -2:2 --margin 0 ext -M QW -N QW");
    CHECK(r.code == 3);
    const Json j = Json::parse(r.out);
    CHECK(j["error"]["kind"] == "window");
    CHECK(j["error"].contains("required_min"));
}

TEST_CASE("koszul on the rank two ring")
{
    const Run r = run(cfg("koszul_r2.cfg") + " koszul");
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["ranks"] == Json::array({"1", "2", "1"}));
    CHECK(j["verdict"] == "exact");
}

TEST_CASE("torsion of the free module")
{
    const Run r = run(cfg("o2.cfg") + " torsion -M RW");
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["torsion_is_zero"] == true);
    CHECK(j["is_torsion"] == false);
}

TEST_CASE("formality verdicts")
{
    for (const char* name : {"formal.cfg", "c1.cfg", "explicit_c1.cfg"}) {
        CAPTURE(name);
        const Run r = run(cfg(name) + " formality");
        REQUIRE(r.code == 0);
        CHECK(Json::parse(r.out)["verdict"] == "quasi-iso: all degrees pass");
    }
}

TEST_CASE("exit codes for bad input")
{
    CHECK(run("--config /nonexistent.cfg koszul").code == 2);
    CHECK(run(cfg("o2.cfg") + " ext -M NOPE -N QW").code == 2);
    CHECK(run(cfg("o2.cfg") + " --window 3:1 koszul").code == 2);
    CHECK(run(cfg("o2.cfg")).code == 2);
    CHECK(run(cfg("o2.cfg") + " formality").code == 2);
}

TEST_CASE("repeated runs are byte identical with and without cache")
{
    const Run a = run(cfg("swap_r2.cfg") + " chart -M QW -N QW");
    const Run b = run(cfg("swap_r2.cfg") + " chart -M QW -N QW");
    const Run c = run(cfg("swap_r2.cfg") + " --no-cache chart -M QW -N QW");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
}
}
