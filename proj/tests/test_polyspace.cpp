#include <doctest.h>

#include "oracles.hpp"
#include "polybend/errors.hpp"

using namespace polybend;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::ContractViolation;
}

TangentVector random_tangent(const Polygon& u, Rng& rng) {
    // Combination of chord bending fields and rotations is tangent by construction.
    TangentVector X{std::vector<Vec3>(u.n())};
    for (int i = 0; i < u.n(); ++i)
        for (int j = i + 2; j < u.n(); ++j) {
            if (i == 0 && j == u.n() - 1) continue;
            const auto B = chord_bending_field(u, {i, j});
            const double a = gaussian(rng);
            for (int m = 0; m < u.n(); ++m) X.X[m] += a * B.X[m];
        }
    const auto R = orbit_tangent(u, {gaussian(rng), gaussian(rng), gaussian(rng)});
    for (int m = 0; m < u.n(); ++m) X.X[m] += R.X[m];
    return X;
}

}  // namespace

TEST_CASE("validate_polygon examples") {
    const Polygon sq = oracle::square();
    CHECK(closing_defect(sq) == 0);
    CHECK(stratum_of(sq).tag == StratumTag::Nondegenerate);

    const Polygon lined = oracle::lined4();
    const auto st = stratum_of(lined);
    CHECK(st.tag == StratumTag::Degenerate);
    CHECK(norm(st.direction - e1) < 1e-15);

    CHECK(code_of([] { validate_polygon({e1, e2, e3}, SideLengths({1, 1, 1})); }) == ErrorCode::ClosingViolation);
    CHECK(code_of([] { validate_polygon({e1, 2 * e2, -e1, -e2}, SideLengths({1, 1, 1, 1})); }) ==
          ErrorCode::NonUnitEdge);
    CHECK(code_of([] { validate_polygon({e1, -e1}, SideLengths({1, 1, 1})); }) == ErrorCode::LengthMismatch);
    CHECK_THROWS_AS(SideLengths({1, 0, 1}), Error);
}

TEST_CASE("edges within the repair band are renormalized") {
    const double k = 1 + 1e-11;
    const Polygon u = validate_polygon({k * e1, e2, -e1, -e2}, SideLengths({1, 1, 1, 1}));
    CHECK(norm(u.u[0]) == doctest::Approx(1).epsilon(1e-15));
}

TEST_CASE("diagonal examples and index rules") {
    const Polygon sq = oracle::square();
    CHECK(diagonal(sq, 0, 2) == Vec3{1, 1, 0});
    CHECK(diagonal(sq, 2, 0) == Vec3{-1, -1, 0});
    CHECK(diagonal(oracle::lined4(), 0, 2) == Vec3{});
    CHECK(code_of([&] { diagonal(sq, 0, 4); }) == ErrorCode::IndexOutOfRange);
    CHECK(code_of([&] { diagonal(sq, 1, 1); }) == ErrorCode::IndexOutOfRange);

    Rng rng = item_rng(10, 0);
    const Polygon u = random_polygon(7, rng);
    const auto p = u.vertices();
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
            if (i != j) CHECK(norm(diagonal(u, i, j) - (p[j] - p[i])) < 1e-13);
}

TEST_CASE("is_generic matches exhaustive sign enumeration") {
    CHECK_FALSE(is_generic(SideLengths({1, 1, 1, 1})));
    CHECK(is_generic(SideLengths({1, 2, 4})));
    // Odd total length: every signed sum is odd, so no lined polygon exists.
    CHECK(is_generic(SideLengths({1, 1, 1, 2})));
    Rng rng = item_rng(11, 0);
    for (int s = 0; s < 300; ++s) {
        const int n = 3 + static_cast<int>(uniform01(rng) * 7);
        std::vector<double> r(n);
        for (double& x : r) x = 1 + static_cast<int>(uniform01(rng) * 4);
        CHECK(is_generic(SideLengths(r)) == oracle::generic_brute(r));
    }
}

TEST_CASE("omega is antisymmetric and kills rotation fields") {
    Rng rng = item_rng(12, 0);
    for (int s = 0; s < 100; ++s) {
        const Polygon u = random_polygon(5 + s % 4, rng);
        const auto X = random_tangent(u, rng), Y = random_tangent(u, rng);
        CHECK(omega(u, X, X) == 0);
        CHECK(omega(u, X, Y) == doctest::Approx(-omega(u, Y, X)).epsilon(1e-12));
        const auto R = orbit_tangent(u, {gaussian(rng), gaussian(rng), gaussian(rng)});
        CHECK(std::fabs(omega(u, X, R)) < 1e-10);
    }
}

TEST_CASE("omega rejects non-tangent input") {
    const Polygon sq = oracle::square();
    TangentVector bad{{e1, Vec3{}, Vec3{}, Vec3{}}};  // not orthogonal to u^0
    CHECK(code_of([&] { omega(sq, bad, bad); }) == ErrorCode::TangencyViolation);
    TangentVector open{{e3, Vec3{}, Vec3{}, Vec3{}}};  // orthogonal but does not close
    CHECK(code_of([&] { omega(sq, open, open); }) == ErrorCode::TangencyViolation);
}

TEST_CASE("orbit_tangent examples") {
    const Polygon sq = oracle::square();
    for (const auto& x : orbit_tangent(sq, {}).X) CHECK(x == Vec3{});
    for (const auto& x : orbit_tangent(oracle::lined4(), e1).X) CHECK(x == Vec3{});
    const auto T = orbit_tangent(sq, e3);
    CHECK(T.X[0] == Vec3{0, 1, 0});
    CHECK(T.X[1] == Vec3{-1, 0, 0});
    CHECK(T.X[2] == Vec3{0, -1, 0});
    CHECK(T.X[3] == Vec3{1, 0, 0});
}

TEST_CASE("horizontal_project against Gram-Schmidt") {
    Rng rng = item_rng(13, 0);
    for (int s = 0; s < 100; ++s) {
        const Polygon u = random_polygon(5, rng);
        const auto X = random_tangent(u, rng);
        const auto H = horizontal_project(u, X);
        const auto G = oracle::horizontal_gs(u, X);
        for (int i = 0; i < 5; ++i) CHECK(norm(H.X[i] - G.X[i]) < 1e-10);
        for (const Vec3& e : {e1, e2, e3}) CHECK(std::fabs(metric(u, H, orbit_tangent(u, e))) < 1e-10);
        // Idempotent, and kills orbit directions.
        const auto HH = horizontal_project(u, H);
        for (int i = 0; i < 5; ++i) CHECK(norm(HH.X[i] - H.X[i]) < 1e-12);
        const auto Z = horizontal_project(u, orbit_tangent(u, {gaussian(rng), gaussian(rng), gaussian(rng)}));
        for (const auto& x : Z.X) CHECK(norm(x) < 1e-12);
    }
}

TEST_CASE("align_canonical is constant on SO(3) orbits") {
    const Polygon sq = oracle::square();
    CHECK(oracle::max_edge_diff(align_canonical(sq), sq) < 1e-15);

    const Polygon lined = align_canonical(rotated(oracle::lined4(), Rotation::about(e2, 0.7)));
    for (int i = 0; i < 4; ++i) CHECK(norm(lined.u[i] - (i % 2 ? -e1 : e1)) < 1e-15);

    Rng rng = item_rng(14, 0);
    for (int s = 0; s < 100; ++s) {
        const Polygon u = s % 2 ? random_polygon(6, rng) : sq;
        const Polygon a = align_canonical(u);
        const Polygon b = align_canonical(rotated(u, random_rotation(rng)));
        CHECK(oracle::max_edge_diff(a, b) < 1e-12);
    }
}

TEST_CASE("stratum_of tolerance") {
    const Vec3 tilt = Vec3{1, 1e-6, 0} / norm(Vec3{1, 1e-6, 0});
    const Vec3 tilt2 = Vec3{1, -1e-6, 0} / norm(Vec3{1, -1e-6, 0});
    const Polygon near = validate_polygon({tilt, -tilt2, tilt2, -tilt}, SideLengths({1, 1, 1, 1}));
    CHECK(stratum_of(near).tag == StratumTag::Nondegenerate);
}
