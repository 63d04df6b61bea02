#include "polybend/geom.hpp"

#include <algorithm>
#include <string>

#include "polybend/errors.hpp"
#include "polybend/tolerances.hpp"

namespace polybend {

const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ContractViolation: return "ContractViolation";
        case ErrorCode::ClosingViolation: return "ClosingViolation";
        case ErrorCode::NonUnitEdge: return "NonUnitEdge";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::TangencyViolation: return "TangencyViolation";
        case ErrorCode::CrossingDiagonals: return "CrossingDiagonals";
        case ErrorCode::WrongCount: return "WrongCount";
        case ErrorCode::SideNotDiagonal: return "SideNotDiagonal";
        case ErrorCode::ZeroDiagonal: return "ZeroDiagonal";
        case ErrorCode::SingularPoint: return "SingularPoint";
        case ErrorCode::InfeasibleFiber: return "InfeasibleFiber";
        case ErrorCode::NotOnFiber: return "NotOnFiber";
        case ErrorCode::FaceNotDegenerate: return "FaceNotDegenerate";
        case ErrorCode::NotInDenseSet: return "NotInDenseSet";
        case ErrorCode::DiagonalNotVanishing: return "DiagonalNotVanishing";
        case ErrorCode::NotAFrame: return "NotAFrame";
        case ErrorCode::PartialSumNonzero: return "PartialSumNonzero";
        case ErrorCode::DegenerateNormalization: return "DegenerateNormalization";
        case ErrorCode::SchemaViolation: return "SchemaViolation";
    }
    return "Error";
}

bool is_finite(const Vec3& a) {
    return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

Vec3 unit_perpendicular(const Vec3& v) {
    // Cross with the coordinate axis least aligned with v.
    const double ax = std::fabs(v.x), ay = std::fabs(v.y), az = std::fabs(v.z);
    Vec3 helper = e1;
    if (ay <= ax && ay <= az)
        helper = e2;
    else if (az <= ax && az <= ay)
        helper = e3;
    // Scale first so tiny or huge inputs neither underflow nor overflow.
    const Vec3 p = cross(v / max_abs(v), helper);
    return p / norm(p);
}

Quaternion Quaternion::inverse() const {
    const double n2 = norm2();
    return (1.0 / n2) * conj();
}

Quaternion Quaternion::normalized() const {
    const double n = norm();
    return (1.0 / n) * *this;
}

Vec3 phi(const Quaternion& q) {
    const Quaternion i_unit{0, 1, 0, 0};
    return (q.conj() * i_unit * q).imag();
}

Rotation Rotation::about(const Vec3& axis, double angle) {
    const double n = norm(axis);
    if (!is_finite(axis) || std::fabs(n - 1.0) > default_tolerances().kernel)
        throw Error(ErrorCode::ContractViolation,
                    "rotation axis must be a unit vector (norm " + std::to_string(n) + ")");
    if (!std::isfinite(angle)) throw Error(ErrorCode::ContractViolation, "non-finite rotation angle");
    const double s = std::sin(0.5 * angle);
    return Rotation(Quaternion{std::cos(0.5 * angle), s * axis.x, s * axis.y, s * axis.z});
}

Rotation Rotation::from_quaternion(const Quaternion& q) {
    const double n = q.norm();
    if (!(n > 0) || !std::isfinite(n))
        throw Error(ErrorCode::ContractViolation, "rotation quaternion must be nonzero and finite");
    return Rotation(q.normalized());
}

Vec3 Rotation::apply(const Vec3& v) const {
    // v' = v + 2 re (b x v) + 2 b x (b x v), with b the vector part.
    const Vec3 b = q_.imag();
    const Vec3 t = 2.0 * cross(b, v);
    return v + q_.re * t + cross(b, t);
}

Vec3 Rotation::axis() const {
    const Vec3 b = q_.imag();
    const double n = norm(b);
    if (n == 0) return e3;
    return (q_.re >= 0 ? 1.0 : -1.0) * b / n;
}

double Rotation::angle() const {
    return 2.0 * std::atan2(norm(q_.imag()), std::fabs(q_.re));
}

Eig2 herm2_eigs(double g11, double g22, std::complex<double> g12) {
    const double mean = 0.5 * (g11 + g22);
    const double radius = std::hypot(0.5 * (g11 - g22), std::abs(g12));
    Eig2 e{mean + radius, mean - radius};
    // Recover the small root from the determinant to avoid cancellation.
    const double d = g11 * g22 - std::norm(g12);
    if (std::fabs(e.lambda2) < std::fabs(e.lambda1) * 1e-4 && e.lambda1 != 0) e.lambda2 = d / e.lambda1;
    return e;
}

}  // namespace polybend
