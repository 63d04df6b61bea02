#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polybend/fibers.hpp"
#include "polybend/grassmann.hpp"
#include "polybend/io.hpp"

namespace polybend {

const char* version();

struct RunConfig {
    std::uint64_t seed = 7;
    Tolerances tol{};
    int n = 0;         // 0 selects the suite's default sizes
    int samples = 0;   // 0 selects the suite's default count
    int grid = 9;      // points per fiber-grid axis
};

json to_json(const RunConfig& cfg);

struct CheckResult {
    std::string name;
    double max_residual = 0;
    double threshold = 0;
    long evaluated = 0;
    long failures = 0;
    std::string first_failure;  // reproducible locator of the lowest failing item

    bool pass() const { return failures == 0; }
    // Records one residual; ok overrides the threshold comparison when given.
    void add(double residual, const std::string& locator);
    void add_flag(bool ok, const std::string& locator, double residual = 0);
};

struct SuiteReport {
    std::string suite;
    RunConfig config;
    std::vector<CheckResult> checks;
    json details = json::object();

    bool pass() const;
    json to_json() const;
};

// Random closed polygon: centered Gaussian edge vectors.
Polygon random_polygon(int n, Rng& rng);

// Side-length vectors used for exhaustive fiber grids.
std::vector<std::vector<double>> grid_side_lengths(int n);
// Cartesian grid in diagonal lengths (uniform points plus the half-integer lattice
// for integral r), feasible points only, returned as F values.
std::vector<FiberValue> fiber_grid(const BendingSystem& sys, int points, const Tolerances& tol = default_tolerances());

struct FiberCheck {
    FiberModel model;
    std::vector<int> generator_rank;     // SVD rank of tangent_generators per sample
    std::vector<int> horizontal_rank;    // rank of horizontally projected bending fields per sample
    std::vector<int> piece_rotation_rank_max;  // max over pieces of the rank of that piece's rotations
    bool rank_type_I = false;
    bool rank_lagrangian = false;
    double max_omega = 0;                // normalized |omega| over generator pairs
    double max_momentum_error = 0;
};

FiberCheck check_fiber(const BendingSystem& sys, const FiberValue& c, int samples, std::uint64_t seed,
                       const Tolerances& tol = default_tolerances());

SuiteReport verify_poisson(const RunConfig& cfg);
SuiteReport verify_flow(const RunConfig& cfg);
SuiteReport verify_action_angle(const RunConfig& cfg);
SuiteReport verify_isotropy(const RunConfig& cfg);
SuiteReport verify_grassmann(const RunConfig& cfg);
SuiteReport verify_gc(const RunConfig& cfg);

}  // namespace polybend
