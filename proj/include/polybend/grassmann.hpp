#pragma once

#include <complex>
#include <string>
#include <vector>

#include "polybend/bending.hpp"
#include "polybend/random.hpp"

namespace polybend {

using Complex = std::complex<double>;

// Orthonormal pair in C^n.
struct TwoFrame {
    std::vector<Complex> z, w;
    int n() const { return static_cast<int>(z.size()); }
};

TwoFrame validate_frame(std::vector<Complex> z, std::vector<Complex> w, double tol = 1e-12);
// Gram-Schmidt on two complex Gaussian vectors.
TwoFrame random_frame(int n, Rng& rng);

// q = z + w j, as components (Re z, Im z, Re w, Im w).
Quaternion frame_quaternion(Complex z, Complex w);
// conj(q) i q = i(|z|^2 - |w|^2 + 2 conj(z) w j), returned as (i, j, k) coordinates.
Vec3 phi_quat(Complex z, Complex w);

struct FramePolygon {
    std::vector<Vec3> edges;    // phi of each row
    std::vector<double> r;      // |edges[i]|
    std::vector<int> improper;  // rows with r_i = 0
    // Throws ContractViolation when an improper edge is present.
    Polygon polygon() const;
};

FramePolygon frame_to_polygon(const TwoFrame& f);

double psi_side(const TwoFrame& f, int i);
// Two nonzero eigenvalues of ((z^a conj z^b + w^a conj w^b) / 2)_{a,b in I}.
Eig2 psi_diagonal(const TwoFrame& f, const std::vector<int>& I);

// |4 lambda_2 + |sum_I q_i| - sum_I r_i| per diagonal, I = edges i..j-1.
std::vector<double> check_relation(const TwoFrame& f, const DiagonalSet& ds);

struct FrameSplit {
    TwoFrame first, second;
    double alpha1 = 0, alpha2 = 0;
    std::vector<int> first_rows, second_rows;
};

FrameSplit split_frame(const TwoFrame& f, std::vector<int> I, double tol = 1e-10);

// Rows with z^l = w^l = 0 exactly are removed; rows that are merely small are
// listed in `small` and kept.
struct NullReduction {
    TwoFrame frame;
    std::vector<int> kept;
    std::vector<int> small;
};
NullReduction drop_null_coordinates(const TwoFrame& f, double small_tol = 1e-12);

// Right multiplication of the rows in I by the quaternion P.
TwoFrame right_multiply(const TwoFrame& f, const Quaternion& P, const std::vector<int>& I);
TwoFrame right_multiply(const TwoFrame& f, const Quaternion& P);
// Lift of the normalized bending flow along chord (i, j) by angle t.
TwoFrame lift_bending(const TwoFrame& f, const Chord& c, double t);

// mu[k-1][i-1] = mu_i^k for 1 <= i <= k <= n.
struct GCPattern {
    std::vector<std::vector<double>> mu;
    int n() const { return static_cast<int>(mu.size()); }
    double at(int i, int k) const { return mu[k - 1][i - 1]; }
};

GCPattern gc_pattern(const TwoFrame& f);
// Largest violation of mu_i^k >= mu_i^{k-1} >= mu_{i+1}^k (0 when interlaced).
double interlacing_violation(const GCPattern& g);

struct GraphVertex {
    int i = 0, k = 0;
    double value = 0;
};

struct FiberGraph {
    std::vector<GraphVertex> vertices;
    std::vector<std::pair<int, int>> edges;  // vertex indices, present equalities only
    std::vector<bool> diamonds;              // D_1 .. D_{n-3}
    int vertex_index(int i, int k) const;
};

FiberGraph fiber_graph(const SideLengths& r, const FiberValue& c, const BendingSystem& sys,
                       const Tolerances& tol = default_tolerances());
std::string to_dot(const FiberGraph& g);

}  // namespace polybend
