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

// The worked n = 4 frame; its image is the lined polygon along k.
TwoFrame worked() { return validate_frame({0.5, 0.5, 0.5, 0.5}, {0.5, -0.5, 0.5, -0.5}); }

void check_frame(const TwoFrame& f, double tol = 1e-12) {
    double zz = 0, ww = 0;
    Complex zw = 0;
    for (int i = 0; i < f.n(); ++i) {
        zz += std::norm(f.z[i]);
        ww += std::norm(f.w[i]);
        zw += std::conj(f.z[i]) * f.w[i];
    }
    CHECK(std::fabs(zz - 1) < tol);
    CHECK(std::fabs(ww - 1) < tol);
    CHECK(std::abs(zw) < tol);
}

}  // namespace

TEST_CASE("phi_quat examples") {
    CHECK(phi_quat(1.0, 0.0) == Vec3{1, 0, 0});
    CHECK(norm(phi_quat(0.5, 0.5) - Vec3{0, 0, 0.5}) < 1e-16);
    CHECK(phi_quat(0.0, 1.0) == Vec3{-1, 0, 0});
    Rng rng = item_rng(40, 0);
    for (int s = 0; s < 100; ++s) {
        const Complex z{gaussian(rng), gaussian(rng)}, w{gaussian(rng), gaussian(rng)};
        CHECK(norm(phi_quat(z, w) - phi(frame_quaternion(z, w))) < 1e-13 * (std::norm(z) + std::norm(w)));
    }
}

TEST_CASE("worked frame") {
    const TwoFrame f = worked();
    const auto p = frame_to_polygon(f);
    for (int i = 0; i < 4; ++i) {
        CHECK(norm(p.edges[i] - Vec3{0, 0, i % 2 ? -0.5 : 0.5}) < 1e-16);
        CHECK(p.r[i] == doctest::Approx(0.5));
        CHECK(psi_side(f, i) == doctest::Approx(0.25));
    }
    CHECK(stratum_of(p.polygon()).tag == StratumTag::Degenerate);
    auto e = psi_diagonal(f, {0, 1});
    CHECK(e.lambda1 == doctest::Approx(0.25));
    CHECK(e.lambda2 == doctest::Approx(0.25));
    e = psi_diagonal(f, {0, 1, 2, 3});
    CHECK(e.lambda1 == doctest::Approx(0.5));
    CHECK(e.lambda2 == doctest::Approx(0.5));
    e = psi_diagonal(f, {0});
    CHECK(e.lambda1 == doctest::Approx(psi_side(f, 0)));
    CHECK(e.lambda2 == 0);
}

TEST_CASE("validate_frame rejects non-orthonormal pairs") {
    CHECK(code_of([] { validate_frame({1.0, 0.0}, {1.0, 0.0}); }) == ErrorCode::NotAFrame);
    CHECK(code_of([] { validate_frame({1.0, 0.0}, {0.0, 2.0}); }) == ErrorCode::NotAFrame);
    CHECK(code_of([] { validate_frame({1.0, 0.0}, {0.0}); }) == ErrorCode::NotAFrame);
}

TEST_CASE("image polygon: perimeter 2, closed, phase invariant lengths") {
    Rng rng = item_rng(41, 0);
    for (int s = 0; s < 200; ++s) {
        const int n = 4 + s % 5;
        const TwoFrame f = random_frame(n, rng);
        check_frame(f);
        const auto p = frame_to_polygon(f);
        double per = 0;
        Vec3 sum;
        for (int i = 0; i < n; ++i) {
            per += p.r[i];
            sum += p.edges[i];
        }
        CHECK(std::fabs(per - 2) < 1e-12);
        CHECK(norm(sum) < 1e-12);

        TwoFrame g = f;
        for (int i = 0; i < n; ++i) {
            const Complex ph = std::polar(1.0, uniform(rng, 0, 2 * M_PI));
            g.z[i] *= ph;
            g.w[i] *= ph;
        }
        const auto q = frame_to_polygon(g);
        for (int i = 0; i < n; ++i) CHECK(std::fabs(q.r[i] - p.r[i]) < 1e-14);
    }
}

TEST_CASE("improper rows") {
    const TwoFrame f = validate_frame({1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0});
    CHECK(psi_side(f, 2) == 0);
    const auto p = frame_to_polygon(f);
    CHECK(p.improper == std::vector<int>{2, 3});
    CHECK(code_of([&] { p.polygon(); }) == ErrorCode::ContractViolation);
    const auto red = drop_null_coordinates(f);
    CHECK(red.kept == std::vector<int>{0, 1});
    CHECK(red.frame.n() == 2);
    check_frame(red.frame);
}

TEST_CASE("small rows are reported, not dropped") {
    const double e = 1e-8;
    const double c = std::sqrt(1 - e * e);
    const TwoFrame f = validate_frame({c, 0.0, e, 0.0}, {0.0, 1.0, 0.0, 0.0});
    const auto red = drop_null_coordinates(f, 1e-12);
    CHECK(red.kept == std::vector<int>{0, 1, 2});
    CHECK(red.small == std::vector<int>{2});
}

TEST_CASE("psi_diagonal equals the top of the Hermitian spectrum") {
    Rng rng = item_rng(42, 0);
    for (int s = 0; s < 200; ++s) {
        const int n = 4 + s % 5;
        const TwoFrame f = random_frame(n, rng);
        const int a = static_cast<int>(uniform01(rng) * (n - 1));
        const int b = a + 1 + static_cast<int>(uniform01(rng) * (n - 1 - a));
        std::vector<int> I;
        for (int i = a; i <= b; ++i) I.push_back(i);
        const auto ref = oracle::block_eigs(f, I);
        const auto e = psi_diagonal(f, I);
        CHECK(std::fabs(e.lambda1 - ref[0]) < 1e-13);
        CHECK(std::fabs(e.lambda2 - ref[1]) < 1e-13);
        for (std::size_t t = 2; t < ref.size(); ++t) CHECK(std::fabs(ref[t]) < 1e-13);
    }
}

TEST_CASE("relation between psi and diagonal lengths") {
    Rng rng = item_rng(43, 0);
    for (int s = 0; s < 200; ++s) {
        const int n = 4 + s % 5;
        const TwoFrame f = random_frame(n, rng);
        for (const auto& ds : {caterpillar(n), snake(n)})
            for (double r : check_relation(f, ds)) CHECK(r < 1e-10);
        // A single edge: 4 * 0 + r_i - r_i, up to round-off in the Gram determinant.
        CHECK(std::fabs(psi_diagonal(f, {1}).lambda2) < 1e-16);
    }
}

TEST_CASE("split_frame at a vanishing partial sum") {
    const TwoFrame f = worked();
    const auto sp = split_frame(f, {0, 1});
    check_frame(sp.first);
    check_frame(sp.second);
    CHECK(sp.alpha1 == doctest::Approx(std::sqrt(2.0)));
    CHECK(sp.first_rows == std::vector<int>{0, 1});
    CHECK(sp.second_rows == std::vector<int>{2, 3});
    // Each block's image is the corresponding part of the polygon rescaled by alpha^2.
    const auto whole = frame_to_polygon(f), part = frame_to_polygon(sp.first);
    for (int i = 0; i < 2; ++i) CHECK(norm(part.edges[i] - 2.0 * whole.edges[i]) < 1e-15);

    CHECK(code_of([&] { split_frame(f, {0, 1, 2, 3}); }) == ErrorCode::DegenerateNormalization);
    CHECK(code_of([&] { split_frame(f, {}); }) == ErrorCode::DegenerateNormalization);
    Rng rng = item_rng(44, 0);
    CHECK(code_of([&] { split_frame(random_frame(5, rng), {0, 1}); }) == ErrorCode::PartialSumNonzero);
}

TEST_CASE("right multiplication rotates the image polygon") {
    Rng rng = item_rng(45, 0);
    for (int s = 0; s < 100; ++s) {
        const TwoFrame f = random_frame(6, rng);
        const Rotation R = random_rotation(rng);
        const TwoFrame g = right_multiply(f, R.quaternion());
        check_frame(g);
        const auto a = frame_to_polygon(f), b = frame_to_polygon(g);
        // phi(q P) = conj(P) phi(q) P, the rotation by the inverse of R.
        for (int i = 0; i < 6; ++i) CHECK(norm(b.edges[i] - R.inverse().apply(a.edges[i])) < 1e-13);
    }
}

TEST_CASE("lifted bending covers the normalized flow") {
    Rng rng = item_rng(46, 0);
    for (int s = 0; s < 100; ++s) {
        const int n = 4 + s % 5;
        const TwoFrame f = random_frame(n, rng);
        const Polygon u = frame_to_polygon(f).polygon();
        const DiagonalSet ds = snake(n);
        for (const Chord& c : ds.diagonals()) {
            const double t = uniform(rng, -4, 4);
            const TwoFrame g = lift_bending(f, c, t);
            check_frame(g);
            CHECK(oracle::max_edge_diff(frame_to_polygon(g).polygon(), chord_flow(u, c, t, true)) < 1e-12);
        }
    }
    CHECK(code_of([] { lift_bending(worked(), {0, 2}, 1.0); }) == ErrorCode::ZeroDiagonal);
}

TEST_CASE("Gel'fand-Cetlin pattern") {
    const auto g = gc_pattern(worked());
    CHECK(g.at(1, 1) == doctest::Approx(0.25));
    CHECK(g.at(1, 2) == doctest::Approx(0.25));
    CHECK(g.at(2, 2) == doctest::Approx(0.25));
    CHECK(g.at(1, 4) == doctest::Approx(0.5));
    CHECK(g.at(2, 4) == doctest::Approx(0.5));
    CHECK(g.at(3, 4) == doctest::Approx(0).epsilon(1e-15));

    // Support on the first two rows saturates the ladder at k = 2.
    const auto h = gc_pattern(validate_frame({0.6, 0.8, 0.0, 0.0, 0.0}, {0.8, -0.6, 0.0, 0.0, 0.0}));
    for (int k = 2; k <= 5; ++k) {
        CHECK(h.at(1, k) == doctest::Approx(0.5));
        CHECK(h.at(2, k) == doctest::Approx(0.5));
    }

    Rng rng = item_rng(47, 0);
    for (int s = 0; s < 100; ++s) {
        const int n = 4 + s % 5;
        const TwoFrame f = random_frame(n, rng);
        const auto p = gc_pattern(f);
        CHECK(interlacing_violation(p) < 1e-12);
        for (int k = 1; k <= n; ++k) {
            std::vector<int> I(k);
            for (int i = 0; i < k; ++i) I[i] = i;
            const auto ref = oracle::block_eigs(f, I);
            for (int i = 1; i <= k; ++i) CHECK(std::fabs(p.at(i, k) - ref[i - 1]) < 1e-13);
        }
    }
}

TEST_CASE("interlacing_violation reports the largest breach") {
    GCPattern g;
    g.mu = {{0.3}, {0.2, 0.1}};
    CHECK(interlacing_violation(g) == doctest::Approx(0.1));
}

TEST_CASE("fiber graph diamonds") {
    const SideLengths r({0.5, 0.5, 0.5, 0.5});
    const BendingSystem sys(r, caterpillar(4));
    const auto g = fiber_graph(r, {{0}}, sys);
    REQUIRE(g.diamonds.size() == 1);
    CHECK(g.diamonds[0]);
    const int a = g.vertex_index(1, 2), b = g.vertex_index(2, 2);
    CHECK(g.vertices[a].value == doctest::Approx(0.25));
    CHECK(g.vertices[b].value == doctest::Approx(0.25));
    auto has_edge = [](const FiberGraph& h, int x, int y) {
        return std::find(h.edges.begin(), h.edges.end(), std::pair{x, y}) != h.edges.end() ||
               std::find(h.edges.begin(), h.edges.end(), std::pair{y, x}) != h.edges.end();
    };
    CHECK(has_edge(g, a, b));
    const std::string dot = to_dot(g);
    CHECK(dot.find("D1") != std::string::npos);
    CHECK(dot.find("color=red") != std::string::npos);

    // Regular fiber: only the equalities common to every graph, mu_1^{n-1} = mu_1^n = mu_2^n = 1/2.
    const auto reg = fiber_graph(r, {{0.5 * 0.5}}, sys);
    CHECK_FALSE(reg.diamonds[0]);
    CHECK(reg.edges.size() == 3);
    const int t = reg.vertex_index(1, 3), u1 = reg.vertex_index(1, 4), u2 = reg.vertex_index(2, 4);
    CHECK(has_edge(reg, t, u1));
    CHECK(has_edge(reg, t, u2));
    CHECK(has_edge(reg, u1, u2));
    CHECK(to_dot(reg).find("color=red") == std::string::npos);
}

TEST_CASE("fiber graph values match the pattern of a frame over the fiber") {
    Rng rng = item_rng(48, 0);
    for (int s = 0; s < 50; ++s) {
        const int n = 4 + s % 4;
        const TwoFrame f = random_frame(n, rng);
        const auto p = frame_to_polygon(f);
        const Polygon u = p.polygon();
        const BendingSystem sys(u.r, caterpillar(n));
        const auto g = fiber_graph(u.r, momentum_F(sys, u), sys);
        const auto pat = gc_pattern(f);
        for (const auto& v : g.vertices) CHECK(std::fabs(v.value - pat.at(v.i, v.k)) < 1e-12);
    }
}
