#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "polybend/polyspace.hpp"
#include "polybend/random.hpp"

namespace polybend {

bool chords_cross(const Chord& a, const Chord& b);

// A maximal non-crossing family of n-3 diagonals and its n-2 triangles.
class DiagonalSet {
public:
    DiagonalSet() = default;

    int n() const { return n_; }
    int size() const { return static_cast<int>(diags_.size()); }
    const Chord& operator[](int k) const { return diags_[k]; }
    const std::vector<Chord>& diagonals() const { return diags_; }
    const std::vector<Face>& faces() const { return faces_; }

    // -1 for a polygon side, the diagonal index otherwise; throws if (a, b) is neither.
    int chord_index(int a, int b) const;
    bool is_side(int a, int b) const;
    // Faces on either side of diagonal k: inner has its third vertex strictly inside (i, j).
    int inner_face(int k) const { return inner_[k]; }
    int outer_face(int k) const { return outer_[k]; }
    // Vertex of face f that is not an endpoint of chord (a, b).
    int third_vertex(int f, int a, int b) const;

    friend DiagonalSet validate_diagonals(int n, std::vector<Chord> diags);

private:
    int n_ = 0;
    std::vector<Chord> diags_;
    std::vector<Face> faces_;
    std::vector<int> inner_, outer_;
};

DiagonalSet validate_diagonals(int n, std::vector<Chord> diags);
DiagonalSet caterpillar(int n);               // (0,2), (0,3), ..., (0,n-2)
DiagonalSet snake(int n);                     // zigzag 0,1,n-1,2,n-2,...
std::vector<DiagonalSet> enumerate_triangulations(int n);

struct BendingSystem {
    SideLengths r;
    DiagonalSet diags;

    BendingSystem() = default;
    BendingSystem(SideLengths r_, DiagonalSet d_);
    int n() const { return diags.n(); }
    // Length of chord (a, b) when it is a side or a diagonal with lengths ell.
    double chord_length(int a, int b, const std::vector<double>& ell) const;
};

struct FiberValue {
    std::vector<double> c;
};

struct ActionAngle {
    std::vector<double> length;
    std::vector<double> angle;  // in [0, 2 pi)
};

// ell_k = sqrt(2 c_k); throws InfeasibleFiber on negative values or a violated
// triangle inequality on any face.
std::vector<double> diagonal_lengths(const BendingSystem& sys, const FiberValue& c,
                                     const Tolerances& tol = default_tolerances());
std::array<double, 3> face_side_lengths(const BendingSystem& sys, const Face& f,
                                        const std::vector<double>& ell);
void require_feasible(const BendingSystem& sys, const std::vector<double>& ell,
                      const Tolerances& tol = default_tolerances());

FiberValue momentum_F(const BendingSystem& sys, const Polygon& u);

// X^m = d x u^m for m in [i, j-1], zero elsewhere.
TangentVector chord_bending_field(const Polygon& u, const Chord& c);
TangentVector bending_field(const BendingSystem& sys, const Polygon& u, int k);
TangentVector inverse_bending_field(const BendingSystem& sys, const Polygon& u, int k);

// Rotates edges i..j-1 about d_k by t (normalized) or t |d_k| (Hamiltonian flow of F_k).
Polygon chord_flow(const Polygon& u, const Chord& c, double t, bool normalized,
                   const Tolerances& tol = default_tolerances());
Polygon flow(const BendingSystem& sys, const Polygon& u, int k, double t, bool normalized,
             const Tolerances& tol = default_tolerances());

double poisson_bracket(const BendingSystem& sys, const Polygon& u, int k, int m);
double chord_bracket(const Polygon& u, const Chord& a, const Chord& b);

// Oriented normal of face (a < b < c): (p_b - p_a) x (p_c - p_a).
Vec3 face_normal(const std::vector<Vec3>& vertices, const Face& f);

ActionAngle action_angle(const BendingSystem& sys, const Polygon& u,
                         const Tolerances& tol = default_tolerances());

Polygon build_polygon(const BendingSystem& sys, const FiberValue& c, const std::vector<double>& theta,
                      const Tolerances& tol = default_tolerances());

std::vector<Polygon> sample_fiber(const BendingSystem& sys, const FiberValue& c, int count,
                                  std::uint64_t seed, const Tolerances& tol = default_tolerances());

// Uniform rotation from a unit quaternion with Gaussian components.
template <class G>
Rotation random_rotation(G& rng) {
    Quaternion q;
    do {
        q = {gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng)};
    } while (q.norm2() < 1e-12);
    return Rotation::from_quaternion(q);
}

}  // namespace polybend
