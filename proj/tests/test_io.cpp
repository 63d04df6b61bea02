#include <doctest.h>

#include "oracles.hpp"
#include "polybend/errors.hpp"

using namespace polybend;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::ContractViolation;
}

}  // namespace

TEST_CASE("polygon round trip is exact") {
    Rng rng = item_rng(50, 0);
    for (int s = 0; s < 50; ++s) {
        const Polygon u = random_polygon(6, rng);
        const std::string text = to_json(u).dump();
        const Polygon v = polygon_from_json(json::parse(text));
        CHECK(v.u == u.u);
        CHECK(v.r == u.r);
    }
}

TEST_CASE("doubles print in shortest round-trip form") {
    CHECK(json(0.1).dump() == "0.1");
    CHECK(json(1.0 / 3).dump() == "0.3333333333333333");
    CHECK(json::parse(json(1.0 / 3).dump()).get<double>() == 1.0 / 3);
}

TEST_CASE("readers reject malformed input") {
    CHECK(code_of([] { polygon_from_json(json::parse(R"({"r": [1, 1]})")); }) == ErrorCode::SchemaViolation);
    CHECK(code_of([] { polygon_from_json(json::parse(R"({"r": [1, "a"], "u": []})")); }) ==
          ErrorCode::SchemaViolation);
    CHECK(code_of([] { polygon_from_json(json::parse(R"({"r": [1, 1, 1], "u": [[1, 0], [0, 1], [1, 1]]})")); }) ==
          ErrorCode::SchemaViolation);
    CHECK(code_of([] { diagonals_from_json(json::parse(R"({"n": 5, "diagonals": [[0, 2, 3]]})")); }) ==
          ErrorCode::SchemaViolation);
    CHECK(code_of([] { diagonals_from_json(json::parse(R"({"n": 5.5, "diagonals": []})")); }) ==
          ErrorCode::SchemaViolation);
    CHECK(code_of([] { fiber_value_from_json(json::parse(R"({"c": {}})")); }) == ErrorCode::SchemaViolation);
    CHECK(code_of([] { frame_from_json(json::parse(R"({"n": 2, "z": [[1, 0]], "w": [[0, 0], [1, 0]]})")); }) ==
          ErrorCode::SchemaViolation);
    // Well-formed but geometrically invalid input keeps its own error.
    CHECK(code_of([] { diagonals_from_json(json::parse(R"({"n": 6, "diagonals": [[0, 2], [1, 3], [0, 4]]})")); }) ==
          ErrorCode::CrossingDiagonals);
}

TEST_CASE("diagonal set and frame round trips") {
    const auto ds = snake(7);
    CHECK(diagonals_from_json(to_json(ds)).diagonals() == ds.diagonals());
    Rng rng = item_rng(51, 0);
    const TwoFrame f = random_frame(5, rng);
    const TwoFrame g = frame_from_json(json::parse(to_json(f).dump()));
    CHECK(g.z == f.z);
    CHECK(g.w == f.w);
}

TEST_CASE("fiber model report fields") {
    const BendingSystem sq(SideLengths({1, 1, 1, 1}), caterpillar(4));
    const json j = to_json(classify_fiber(sq, {{2}}));
    CHECK(j["p"] == 0);
    CHECK(j["q"] == 0);
    CHECK(j["k"] == 1);
    CHECK(j["type"] == "II");
    CHECK(j["lagrangian"] == false);
    const json r = to_json(classify_fiber(sq, {{1}}));
    CHECK(r["type"] == "I");
    CHECK(r["lagrangian"] == true);
}

TEST_CASE("suite reports embed the configuration and version") {
    RunConfig cfg;
    cfg.n = 4;
    cfg.samples = 3;
    const json j = verify_poisson(cfg).to_json();
    CHECK(j["version"] == version());
    CHECK(j["config"]["seed"] == 7);
    CHECK(j["config"]["samples"] == 3);
    CHECK(j["config"]["tolerances"]["symplectic"] == 1e-9);
    CHECK(j["pass"] == true);
}
