#include <doctest.h>

#include "oracles.hpp"
#include "polybend/errors.hpp"

using namespace polybend;

namespace {

void check_vec(const Vec3& a, const Vec3& b, double tol = 1e-14) {
    CHECK(norm(a - b) <= tol);
}

}  // namespace

TEST_CASE("quarter turn about e3") { check_vec(rotate(Rotation::about(e3, M_PI / 2), e1), e2); }

TEST_CASE("zero angle is the identity") {
    Rng rng = item_rng(1, 0);
    for (int s = 0; s < 20; ++s) {
        const Vec3 v{gaussian(rng), gaussian(rng), gaussian(rng)};
        const Vec3 a = unit_perpendicular(v);
        CHECK(rotate(Rotation::about(a, 0.0), v) == v);
    }
}

TEST_CASE("half turn about the (1,1,0) diagonal swaps e1 and e2") {
    const Vec3 axis = Vec3{1, 1, 0} / std::sqrt(2.0);
    check_vec(rotate(Rotation::about(axis, M_PI), e1), e2, 1e-15);
}

TEST_CASE("rotation matches the matrix exponential") {
    Rng rng = item_rng(2, 0);
    for (int s = 0; s < 200; ++s) {
        Vec3 axis{gaussian(rng), gaussian(rng), gaussian(rng)};
        axis = axis / norm(axis);
        const double angle = uniform(rng, -7, 7);
        const Vec3 v{gaussian(rng), gaussian(rng), gaussian(rng)};
        const Vec3 ref = oracle::pv(oracle::rotation_series(axis, angle) * oracle::ev(v));
        check_vec(rotate(Rotation::about(axis, angle), v), ref, 1e-12 * (1 + norm(v)));
    }
}

TEST_CASE("composition, inverse and axis-angle recovery") {
    Rng rng = item_rng(3, 0);
    for (int s = 0; s < 100; ++s) {
        const Rotation a = random_rotation(rng), b = random_rotation(rng);
        const Vec3 v{gaussian(rng), gaussian(rng), gaussian(rng)};
        check_vec((a * b).apply(v), a.apply(b.apply(v)), 1e-13 * (1 + norm(v)));
        check_vec(a.inverse().apply(a.apply(v)), v, 1e-13 * (1 + norm(v)));
        CHECK(std::fabs(norm(a.apply(v)) - norm(v)) <= 1e-13 * (1 + norm(v)));
        const Rotation c = Rotation::about(a.axis(), a.angle());
        check_vec(c.apply(v), a.apply(v), 1e-12 * (1 + norm(v)));
    }
}

TEST_CASE("non-unit axis is rejected") {
    try {
        Rotation::about({1, 1, 0}, 0.3);
        FAIL("expected ContractViolation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ContractViolation);
    }
    CHECK_THROWS_AS(Rotation::from_quaternion({0, 0, 0, 0}), Error);
}

TEST_CASE("herm2_eigs examples") {
    auto e = herm2_eigs(1, 1, 0);
    CHECK(e.lambda1 == doctest::Approx(1));
    CHECK(e.lambda2 == doctest::Approx(1));
    e = herm2_eigs(2, 0, 0);
    CHECK(e.lambda1 == doctest::Approx(2));
    CHECK(e.lambda2 == 0);
    e = herm2_eigs(1, 1, 1);
    CHECK(e.lambda1 == doctest::Approx(2));
    CHECK(std::fabs(e.lambda2) < 1e-15);
}

TEST_CASE("herm2_eigs agrees with a general Hermitian solver") {
    Rng rng = item_rng(4, 0);
    for (int s = 0; s < 500; ++s) {
        const double a = uniform(rng, -2, 2), d = uniform(rng, -2, 2);
        const std::complex<double> b{gaussian(rng), gaussian(rng)};
        Eigen::Matrix2cd M;
        M << a, b, std::conj(b), d;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(M);
        const auto e = herm2_eigs(a, d, b);
        const double scale = 1 + std::abs(a) + std::abs(d) + std::abs(b);
        CHECK(std::fabs(e.lambda1 - es.eigenvalues()[1]) <= 1e-14 * scale);
        CHECK(std::fabs(e.lambda2 - es.eigenvalues()[0]) <= 1e-14 * scale);
    }
}

TEST_CASE("herm2_eigs keeps the small root accurate for nearly singular Gram matrices") {
    // [[1, 1], [1, 1 + eps]] has eigenvalues near 2 and eps / 2.
    const double eps = 1e-12;
    const auto e = herm2_eigs(1, 1 + eps, 1);
    CHECK(e.lambda2 == doctest::Approx(eps / 2).epsilon(1e-3));
}

TEST_CASE("phi sends q to conj(q) i q") {
    check_vec(phi({1, 0, 0, 0}), e1);
    Rng rng = item_rng(5, 0);
    for (int s = 0; s < 50; ++s) {
        const Quaternion q{gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng)};
        // |phi(q)| = |q|^2 and phi(q) is the rotation conj(q) . q applied to i.
        CHECK(norm(phi(q)) == doctest::Approx(q.norm2()).epsilon(1e-13));
        const Quaternion ref = q.conj() * Quaternion::pure(e1) * q;
        check_vec(phi(q), ref.imag(), 1e-13 * q.norm2());
    }
}

TEST_CASE("unit_perpendicular is a unit normal") {
    Rng rng = item_rng(6, 0);
    for (const Vec3& v : {e1, e2, e3, Vec3{1e-300, 0, 0}, Vec3{3, -4, 12}}) {
        const Vec3 p = unit_perpendicular(v);
        CHECK(norm(p) == doctest::Approx(1));
        CHECK(std::fabs(dot(p, v)) <= 1e-15 * norm(v));
    }
    for (int s = 0; s < 50; ++s) {
        const Vec3 v{gaussian(rng), gaussian(rng), gaussian(rng)};
        CHECK(std::fabs(dot(unit_perpendicular(v), v)) <= 1e-15 * norm(v));
    }
}
