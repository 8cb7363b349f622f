#include "support.hpp"

#include <freeq/config.hpp>
#include <freeq/errors.hpp>

#include <doctest.h>

#include <string>

using namespace freeq;
using namespace freeq::testing;

namespace {

std::string config_path(const std::string& name)
{
    return std::string(FREEQ_SOURCE_DIR) + "/configs/" + name;
}

const char* kSmall = R"(group: Z2
ring:
  generators: [{name: c, degree: -2}]
  action: {w: [["-1"]]}
modules:
  QW: {builtin: group_ring}
  T:
    generators: [{name: g, degree: 0}]
    relations: ["c^2*g"]
)";

}  // namespace

TEST_SUITE("config")
{
TEST_CASE("bundled o2 config is a valid session")
{
    const SessionConfig s = parse_config(config_path("o2.cfg"));
    CHECK(s.group->order() == 2);
    CHECK(s.ring->rank() == 1);
    CHECK(same_ring(*s.ring, *o2_ring()));
    CHECK(s.module("QW").generators.size() == 1);
    CHECK(s.command_parameter("ext", "M") == "QW");
    REQUIRE(s.window);
    CHECK(*s.window == std::pair<int, int>{-10, 10});
}

TEST_CASE("every bundled config parses")
{
    for (const char* name : {"o2.cfg", "o2_torsion.cfg", "swap_r2.cfg", "koszul_r1.cfg", "koszul_r2.cfg",
                             "koszul_r3.cfg", "c1.cfg", "c2.cfg", "formal.cfg", "explicit_c1.cfg", "reps_z2.cfg",
                             "reps_v4.cfg", "reps_s3.cfg"}) {
        CAPTURE(name);
        CHECK_NOTHROW(parse_config(config_path(name)));
    }
}

TEST_CASE("explicit and free descriptions of C1 agree")
{
    const SessionConfig a = parse_config(config_path("explicit_c1.cfg"));
    const SessionConfig b = parse_config(config_path("c1.cfg"));
    REQUIRE(a.dga);
    REQUIRE(b.dga);
    for (int n = -4; n <= 0; ++n) {
        CHECK(a.dga->dga.dim(n) == b.dga->dga.dim(n));
        CHECK(homology(a.dga->dga, n).dim == homology(b.dga->dga, n).dim);
    }
}

TEST_CASE("string config with relations")
{
    const SessionConfig s = parse_config_string(kSmall, "small");
    const GradedModule t = realize(s.module("T"), -6, 0);
    CHECK(t.dim(0) == 2);
    CHECK(t.dim(-2) == 2);
    CHECK(t.dim(-4) == 0);
    CHECK_THROWS_AS(s.module("missing"), ValidationError);
}

TEST_CASE("rejections")
{
    CHECK_THROWS_WITH_AS(parse_config_string("", "empty"), doctest::Contains("syntax error"), ValidationError);
    CHECK_THROWS_AS(parse_config_string("group: Z2\nring:\n  generators: [{name: c, degree: -3}]\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config_string("group: Z2\ngroup: Z3\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_string("group: [unclosed\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_string("group: Z7x\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_string("group: Z2\nrepresentations:\n  regular: {dim: 2}\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_string("group: Z2\nrepresentations:\n  s: {dim: 1, matrices: {w: [[\"2\"]]}}\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config_string("group: Z2\nbogus: 1\n"), ValidationError);
    // Relation with an unknown factor.
    std::string bad = kSmall;
    bad.replace(bad.find("c^2*g"), 5, "z^2*g");
    CHECK_THROWS_AS(parse_config_string(bad), ValidationError);
    // Inhomogeneous relation.
    std::string mixed = kSmall;
    mixed.replace(mixed.find("c^2*g"), 5, "c*g + c^2*g");
    CHECK_THROWS_AS(parse_config_string(mixed), ValidationError);
}

TEST_CASE("errors carry source and line")
{
    try {
        parse_config_string("group: Z2\nring:\n  generators: [{name: c, degree: -3}]\n", "f.cfg");
        FAIL("expected an error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("f.cfg:") == 0);
    }
}

TEST_CASE("relation grammar")
{
    const RingPtr R = o2_ring();
    const FreeModule f(R, {free_generator("g", 0, R->group())});
    const FreeElement x = parse_free_element(f, "2*c^2*g - 1/2*c^2*w.g");
    FreeElement expect = term(0, {2}, 2);
    add_to(expect, {1, {2}}, Rational(-1, 2));
    CHECK(x == expect);
    // Group element factors act through the twist: w*c*g = -c*w.g.
    CHECK(parse_free_element(f, "w*c*g") == term(1, {1}, -1));
    CHECK_THROWS_AS(parse_free_element(f, "c*c"), ValidationError);
    CHECK(parse_linear_combination({"a", "b", "c2"}, "2*b - 1/2*c2", "here") ==
          Vector{0, 2, Rational(-1, 2)});
    CHECK_THROWS_AS(parse_linear_combination({"a"}, "q", "here"), ValidationError);
}
}
