#include "polybend/polyspace.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "polybend/errors.hpp"

namespace polybend {

SideLengths::SideLengths(std::vector<double> r) : r_(std::move(r)) {
    if (r_.size() < 3)
        throw Error(ErrorCode::ContractViolation, "need at least 3 sides, got " + std::to_string(r_.size()));
    for (std::size_t i = 0; i < r_.size(); ++i)
        if (!(r_[i] > 0) || !std::isfinite(r_[i]))
            throw Error(ErrorCode::ContractViolation, "side length r[" + std::to_string(i) + "] must be positive");
}

double SideLengths::perimeter() const {
    double s = 0;
    for (double x : r_) s += x;
    return s;
}

std::vector<Vec3> Polygon::vertices() const {
    std::vector<Vec3> p(u.size());
    for (std::size_t m = 0; m + 1 < u.size(); ++m) p[m + 1] = p[m] + r[m] * u[m];
    return p;
}

double closing_defect(const Polygon& u) {
    Vec3 s;
    for (int i = 0; i < u.n(); ++i) s += u.r[i] * u.u[i];
    return norm(s);
}

Polygon validate_polygon(std::vector<Vec3> u, const SideLengths& r, const Tolerances& tol) {
    if (u.size() != r.size())
        throw Error(ErrorCode::LengthMismatch,
                    std::to_string(u.size()) + " edges for " + std::to_string(r.size()) + " side lengths");
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double n = norm(u[i]);
        if (!is_finite(u[i]) || std::fabs(n - 1.0) > tol.unit_repair)
            throw Error(ErrorCode::NonUnitEdge, "edge " + std::to_string(i) + " has norm " + std::to_string(n));
        // Edges already unit up to rounding are kept bit-for-bit so text round trips are exact.
        if (std::fabs(n - 1.0) > 4 * std::numeric_limits<double>::epsilon()) u[i] = u[i] / n;
    }
    Polygon p{r, std::move(u)};
    const double defect = closing_defect(p);
    if (defect > tol.closing * r.perimeter())
        throw Error(ErrorCode::ClosingViolation, "closing defect " + std::to_string(defect));
    return p;
}

Vec3 diagonal(const Polygon& u, int i, int j) {
    const int n = u.n();
    if (i < 0 || j < 0 || i >= n || j >= n || i == j)
        throw Error(ErrorCode::IndexOutOfRange,
                    "chord (" + std::to_string(i) + "," + std::to_string(j) + ") for n=" + std::to_string(n));
    if (i > j) return -diagonal(u, j, i);
    Vec3 d;
    for (int m = i; m < j; ++m) d += u.r[m] * u.u[m];
    return d;
}

bool is_generic(const SideLengths& r) {
    const int n = static_cast<int>(r.size());
    if (n > 30) throw Error(ErrorCode::ContractViolation, "is_generic enumerates 2^(n-1) signs; n <= 30");
    const double band = 1e-12 * r.perimeter();
    // Gray-code walk over eps_1..eps_{n-1}, eps_0 = +1.
    double s = r.perimeter();
    std::vector<int> eps(n, 1);
    if (std::fabs(s) <= band) return false;
    const unsigned long long count = 1ULL << (n - 1);
    for (unsigned long long g = 1; g < count; ++g) {
        const int bit = __builtin_ctzll(g) + 1;
        eps[bit] = -eps[bit];
        s += 2.0 * eps[bit] * r[bit];
        if (std::fabs(s) <= band) return false;
    }
    return true;
}

namespace {

double scale_of(const Polygon& u, const TangentVector& X) {
    double s = 0;
    for (int i = 0; i < u.n(); ++i) s += u.r[i] * norm(X.X[i]);
    return s;
}

}  // namespace

bool is_tangent(const Polygon& u, const TangentVector& X, const Tolerances& tol) {
    if (static_cast<int>(X.X.size()) != u.n()) return false;
    const double scale = std::fmax(1.0, scale_of(u, X));
    Vec3 closing;
    for (int i = 0; i < u.n(); ++i) {
        if (std::fabs(dot(u.u[i], X.X[i])) > tol.tangency * std::fmax(1.0, norm(X.X[i]))) return false;
        closing += u.r[i] * X.X[i];
    }
    return norm(closing) <= tol.tangency * scale;
}

void require_tangent(const Polygon& u, const TangentVector& X, const Tolerances& tol) {
    if (static_cast<int>(X.X.size()) != u.n())
        throw Error(ErrorCode::LengthMismatch, "tangent vector has the wrong number of components");
    if (!is_tangent(u, X, tol)) throw Error(ErrorCode::TangencyViolation, "vector is not tangent to P(r) at u");
}

double omega_unchecked(const Polygon& u, const TangentVector& X, const TangentVector& Y) {
    double s = 0;
    for (int i = 0; i < u.n(); ++i) s += u.r[i] * det(u.u[i], X.X[i], Y.X[i]);
    return s;
}

double omega(const Polygon& u, const TangentVector& X, const TangentVector& Y, const Tolerances& tol) {
    require_tangent(u, X, tol);
    require_tangent(u, Y, tol);
    return omega_unchecked(u, X, Y);
}

double metric(const Polygon& u, const TangentVector& X, const TangentVector& Y) {
    double s = 0;
    for (int i = 0; i < u.n(); ++i) s += u.r[i] * dot(X.X[i], Y.X[i]);
    return s;
}

TangentVector orbit_tangent(const Polygon& u, const Vec3& v) {
    TangentVector out{std::vector<Vec3>(u.u.size())};
    for (int i = 0; i < u.n(); ++i) out.X[i] = cross(v, u.u[i]);
    return out;
}

TangentVector horizontal_project(const Polygon& u, const TangentVector& X) {
    // Minimizing |X - v x u| in the metric gives J v = L with
    // J = sum r (I - u u^T), L = sum r u x X.  J is singular only on lined polygons.
    Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
    Eigen::Vector3d L = Eigen::Vector3d::Zero();
    for (int i = 0; i < u.n(); ++i) {
        const Eigen::Vector3d ui(u.u[i].x, u.u[i].y, u.u[i].z);
        J += u.r[i] * (Eigen::Matrix3d::Identity() - ui * ui.transpose());
        const Vec3 c = cross(u.u[i], X.X[i]);
        L += u.r[i] * Eigen::Vector3d(c.x, c.y, c.z);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(J);
    const Eigen::Vector3d ev = es.eigenvalues();
    const double cutoff = 1e-12 * ev.cwiseAbs().maxCoeff();
    Eigen::Vector3d coef = es.eigenvectors().transpose() * L;
    for (int a = 0; a < 3; ++a) coef[a] = std::fabs(ev[a]) > cutoff ? coef[a] / ev[a] : 0.0;
    const Eigen::Vector3d vs = es.eigenvectors() * coef;
    const Vec3 v{vs[0], vs[1], vs[2]};
    TangentVector out = X;
    for (int i = 0; i < u.n(); ++i) out.X[i] -= cross(v, u.u[i]);
    return out;
}

Polygon rotated(const Polygon& u, const Rotation& R) {
    Polygon out = u;
    for (auto& e : out.u) e = R.apply(e);
    return out;
}

namespace {

// Rotation taking unit vector a onto unit vector b.
Rotation align_vectors(const Vec3& a, const Vec3& b) {
    const Vec3 c = cross(a, b);
    const double s = norm(c), cs = dot(a, b);
    if (s < 1e-300) {
        if (cs > 0) return Rotation::identity();
        return Rotation::about(unit_perpendicular(a), M_PI);
    }
    return Rotation::about(c / s, std::atan2(s, cs));
}

}  // namespace

Polygon align_canonical(const Polygon& u, const Tolerances& tol) {
    const Rotation first = align_vectors(u.u[0] / norm(u.u[0]), e1);
    Polygon out = rotated(u, first);
    out.u[0] = e1;
    for (int k = 1; k < out.n(); ++k) {
        const Vec3& v = out.u[k];
        if (max_abs(cross(v, e1)) < tol.collinear) continue;
        const Rotation twist = Rotation::about(e1, -std::atan2(v.z, v.y));
        out = rotated(out, twist);
        out.u[0] = e1;
        out.u[k].z = 0;
        break;
    }
    return out;
}

Stratum stratum_of(const Polygon& u, const Tolerances& tol) {
    for (int i = 1; i < u.n(); ++i)
        if (max_abs(cross(u.u[i], u.u[0])) >= tol.collinear) return {StratumTag::Nondegenerate, {}};
    return {StratumTag::Degenerate, u.u[0]};
}

}  // namespace polybend
