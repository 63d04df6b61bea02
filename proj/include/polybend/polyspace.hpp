#pragma once

#include <cstddef>
#include <vector>

#include "polybend/geom.hpp"
#include "polybend/tolerances.hpp"

namespace polybend {

// Side lengths r_0..r_{n-1}, all positive, n >= 3.
class SideLengths {
public:
    SideLengths() = default;
    explicit SideLengths(std::vector<double> r);

    std::size_t size() const { return r_.size(); }
    double operator[](std::size_t i) const { return r_[i]; }
    const std::vector<double>& values() const { return r_; }
    double perimeter() const;

    friend bool operator==(const SideLengths&, const SideLengths&) = default;

private:
    std::vector<double> r_;
};

// Vertex v is the start of edge v; vertex 0 sits at the origin.
struct Polygon {
    SideLengths r;
    std::vector<Vec3> u;

    int n() const { return static_cast<int>(u.size()); }
    std::vector<Vec3> vertices() const;
};

struct TangentVector {
    std::vector<Vec3> X;
};

// A chord between vertices i < j (0-based).  Sides are (i, i+1) and (0, n-1).
struct Chord {
    int i = 0, j = 0;
    friend bool operator==(const Chord&, const Chord&) = default;
    friend auto operator<=>(const Chord&, const Chord&) = default;
};

struct Face {
    int i = 0, j = 0, k = 0;
    friend bool operator==(const Face&, const Face&) = default;
    friend auto operator<=>(const Face&, const Face&) = default;
};

enum class StratumTag { Nondegenerate, Degenerate };

struct Stratum {
    StratumTag tag = StratumTag::Nondegenerate;
    Vec3 direction{};  // unit line direction when Degenerate
};

Polygon validate_polygon(std::vector<Vec3> u, const SideLengths& r,
                         const Tolerances& tol = default_tolerances());

double closing_defect(const Polygon& u);

// d_{i,j} = r_i u^i + ... + r_{j-1} u^{j-1}.  Requires 0 <= i, j < n; d_{j,i} = -d_{i,j}.
Vec3 diagonal(const Polygon& u, int i, int j);
inline Vec3 diagonal(const Polygon& u, const Chord& c) { return diagonal(u, c.i, c.j); }

// Exhaustive over the 2^(n-1) sign patterns; n <= 30.
bool is_generic(const SideLengths& r);

void require_tangent(const Polygon& u, const TangentVector& X,
                     const Tolerances& tol = default_tolerances());
bool is_tangent(const Polygon& u, const TangentVector& X,
                const Tolerances& tol = default_tolerances());

// sum r_i det(u^i, X^i, Y^i).  The checked form throws TangencyViolation.
double omega(const Polygon& u, const TangentVector& X, const TangentVector& Y,
             const Tolerances& tol = default_tolerances());
double omega_unchecked(const Polygon& u, const TangentVector& X, const TangentVector& Y);

// <X, Y> = sum r_i <X^i, Y^i>
double metric(const Polygon& u, const TangentVector& X, const TangentVector& Y);

TangentVector orbit_tangent(const Polygon& u, const Vec3& v);
TangentVector horizontal_project(const Polygon& u, const TangentVector& X);

Polygon rotated(const Polygon& u, const Rotation& R);
Polygon align_canonical(const Polygon& u, const Tolerances& tol = default_tolerances());
Stratum stratum_of(const Polygon& u, const Tolerances& tol = default_tolerances());

}  // namespace polybend
