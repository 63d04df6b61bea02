#pragma once

#include <cmath>
#include <complex>

namespace polybend {

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
    friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
    friend Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend Vec3 operator/(Vec3 a, double s) { return a *= 1.0 / s; }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double det(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }
inline double max_abs(const Vec3& a) {
    return std::fmax(std::fabs(a.x), std::fmax(std::fabs(a.y), std::fabs(a.z)));
}
bool is_finite(const Vec3& a);

inline constexpr Vec3 e1{1, 0, 0};
inline constexpr Vec3 e2{0, 1, 0};
inline constexpr Vec3 e3{0, 0, 1};

// Deterministic unit vector orthogonal to v (v need not be normalized, must be nonzero).
Vec3 unit_perpendicular(const Vec3& v);

struct Quaternion {
    double re = 1, i = 0, j = 0, k = 0;

    static Quaternion pure(const Vec3& v) { return {0, v.x, v.y, v.z}; }
    Vec3 imag() const { return {i, j, k}; }
    Quaternion conj() const { return {re, -i, -j, -k}; }
    double norm2() const { return re * re + i * i + j * j + k * k; }
    double norm() const { return std::sqrt(norm2()); }
    Quaternion inverse() const;
    Quaternion normalized() const;

    friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return {a.re * b.re - a.i * b.i - a.j * b.j - a.k * b.k,
                a.re * b.i + a.i * b.re + a.j * b.k - a.k * b.j,
                a.re * b.j - a.i * b.k + a.j * b.re + a.k * b.i,
                a.re * b.k + a.i * b.j - a.j * b.i + a.k * b.re};
    }
    friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
        return {a.re + b.re, a.i + b.i, a.j + b.j, a.k + b.k};
    }
    friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
        return {a.re - b.re, a.i - b.i, a.j - b.j, a.k - b.k};
    }
    friend Quaternion operator*(double s, const Quaternion& a) {
        return {s * a.re, s * a.i, s * a.j, s * a.k};
    }
};

// phi(q) = conj(q) i q, an imaginary quaternion returned as (i, j, k) coordinates.
Vec3 phi(const Quaternion& q);

// Rotation stored as a unit quaternion; v -> q v conj(q).
class Rotation {
public:
    Rotation() = default;

    // Throws ContractViolation unless |axis| = 1 within the kernel tolerance.
    static Rotation about(const Vec3& axis, double angle);
    // Normalizes q; throws ContractViolation for a zero or non-finite quaternion.
    static Rotation from_quaternion(const Quaternion& q);
    static Rotation identity() { return {}; }

    Vec3 apply(const Vec3& v) const;
    Rotation inverse() const { return Rotation(q_.conj()); }
    const Quaternion& quaternion() const { return q_; }
    Vec3 axis() const;
    double angle() const;

    // (a * b).apply(v) == a.apply(b.apply(v))
    friend Rotation operator*(const Rotation& a, const Rotation& b) {
        return Rotation((a.q_ * b.q_).normalized());
    }

private:
    explicit Rotation(const Quaternion& q) : q_(q) {}
    Quaternion q_{};
};

inline Vec3 rotate(const Rotation& r, const Vec3& v) { return r.apply(v); }

struct Eig2 {
    double lambda1 = 0, lambda2 = 0;
};

// Eigenvalues of the Hermitian matrix [[g11, g12], [conj(g12), g22]], lambda1 >= lambda2.
Eig2 herm2_eigs(double g11, double g22, std::complex<double> g12);

}  // namespace polybend
