#pragma once

#include <json.hpp>

#include "polybend/bending.hpp"
#include "polybend/fibers.hpp"
#include "polybend/grassmann.hpp"
#include "polybend/polyspace.hpp"

namespace polybend {

using json = nlohmann::json;

// Wire formats use 0-based indices.  Readers throw SchemaViolation on malformed input.
json to_json(const Vec3& v);
json to_json(const Polygon& u);
json to_json(const DiagonalSet& ds);
json to_json(const FiberValue& c);
json to_json(const ActionAngle& a);
json to_json(const FaceStatus& s);
json to_json(const FiberModel& m);
json to_json(const IsotropyReport& r);
json to_json(const TwoFrame& f);
json to_json(const GCPattern& g);
json to_json(const FiberGraph& g);
json to_json(const Tolerances& t);

Polygon polygon_from_json(const json& j, const Tolerances& tol = default_tolerances());
DiagonalSet diagonals_from_json(const json& j);
FiberValue fiber_value_from_json(const json& j);
TwoFrame frame_from_json(const json& j);

}  // namespace polybend
