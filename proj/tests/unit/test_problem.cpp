#include "surflift/counting.hpp"
#include "surflift/error.hpp"
#include "surflift/problem.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace surflift;

namespace {

template <typename Fn>
void expect_parse_error(Fn&& fn, const std::string& needle) {
    try {
        fn();
        FAIL_CHECK("expected a ValidationError mentioning '" << needle << "'");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
}

const char* kMinimalCount = R"({
  "task": "count",
  "groups": {
    "z2": {"cayley": [[0, 1], [1, 0]]},
    "point": {"cayley": [[0]]}
  },
  "extension": {"domain": "z2", "codomain": "point", "images": [0, 0]},
  "surface_hom": {"target": "point", "genus": 1, "x": [0], "y": [0]}
})";

} // namespace

TEST_CASE("problem parsing round trip") {
    SUBCASE("a minimal count problem parses and counts") {
        Problem p = parse_problem(kMinimalCount);
        CHECK(p.task == "count");
        REQUIRE(p.extension.has_value());
        REQUIRE(p.surface_hom.has_value());
        CHECK(p.extension->kernel_order() == 2);
        CHECK(count_lifts_formula(*p.extension, *p.surface_hom).rounded == 4);
    }
    SUBCASE("permutation groups come out with the right structure") {
        Problem p = parse_problem(R"({
          "task": "irr",
          "groups": {"s3": {"permutations": [[[0, 1, 2]], [[0, 1]]], "degree": 3}},
          "irr_target": "s3"
        })");
        REQUIRE(p.irr_target != nullptr);
        CHECK(p.irr_target->order == 6);
        CHECK_FALSE(p.irr_target->is_abelian());
    }
    SUBCASE("cocycle values accept both spellings") {
        Problem p = parse_problem(R"({
          "task": "t2",
          "groups": {"z2": {"cayley": [[0, 1], [1, 0]]}},
          "cocycle": {"group": "z2",
                      "values": [[[1, 0], [1, 0]],
                                 [[1, 0], {"root_of_unity": [1, 2]}]]}
        })");
        REQUIRE(p.theta.has_value());
        CHECK(std::abs(p.theta->at(1, 1) - cplx(-1.0)) < 1e-12);
        CHECK(std::abs(p.theta->at(0, 1) - cplx(1.0)) < 1e-12);
    }
}

TEST_CASE("problem parsing rejects malformed documents") {
    expect_parse_error([] { parse_problem("{ not json"); }, "not valid JSON");
    expect_parse_error([] { parse_problem("[1, 2]"); }, "must be a JSON object");
    expect_parse_error([] { parse_problem(R"({"task": "count"})"); }, "groups");
    expect_parse_error(
        [] { parse_problem(R"({"groups": {}, "task": "frobnicate"})"); }, "unknown task");
    expect_parse_error(
        [] {
            parse_problem(R"({
              "groups": {"z2": {"cayley": [[0, 1], [1, 0]]}},
              "task": "count",
              "extension": {"domain": "z2", "codomain": "nope", "images": [0, 0]}
            })");
        },
        "unknown group 'nope'");
    expect_parse_error(
        [] {
            parse_problem(R"({
              "groups": {"bad": {"cayley": [[0, 1]]}},
              "task": "count"
            })");
        },
        "");
    expect_parse_error(
        [] {
            parse_problem(R"({
              "groups": {"z2": {"cayley": [[0, 1], [1, 0]]}},
              "task": "t2",
              "cocycle": {"group": "z2", "values": [[[1, 0]]]}
            })");
        },
        "dense");
    expect_parse_error(
        [] {
            parse_problem(R"({
              "groups": {"z2": {"cayley": [[0, 1], [1, 0]]}},
              "task": "t2",
              "cocycle": {"group": "z2",
                          "values": [[[1, 0], [1, 0]],
                                     [[1, 0], {"root_of_unity": [1, 0]}]]}
            })");
        },
        "nonzero");
    expect_parse_error(
        [] {
            parse_problem(R"({
              "groups": {"z2": {"cayley": [[0, 1], [1, 0]]}},
              "task": "h1",
              "h1_action": {"fiber": "z2", "genus": 1,
                            "act_x": [[0, 0]], "act_y": [[0, 1]]}
            })");
        },
        "not an automorphism");
    expect_parse_error([] { load_problem("/definitely/not/here.json"); },
                       "cannot open problem file");
}
