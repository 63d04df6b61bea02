#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polybend/bending.hpp"

namespace polybend {

enum class FaceState { Nondegenerate, DegenerateCollinear, HasZeroDiagonalSide };

struct FaceStatus {
    Face face;
    FaceState status = FaceState::Nondegenerate;
    std::array<double, 3> sides{};  // |d_ij|, |d_jk|, |d_ik|
    // Coefficients along the common line when collinear: alpha_1 d_ij + alpha_2 d_jk + alpha_3 d_ki
    // with unit line vectors; the longest side carries the opposite sign.
    std::array<double, 3> alpha{};
    bool boundary_case = false;  // decided inside the tolerance band but not exactly
};

std::vector<FaceStatus> face_statuses(const BendingSystem& sys, const FiberValue& c,
                                      const Tolerances& tol = default_tolerances());
bool is_singular_fiber(const BendingSystem& sys, const FiberValue& c,
                       const Tolerances& tol = default_tolerances());

// Pieces of the wedge decomposition at vanishing chosen diagonals.
struct WedgePiece {
    std::vector<int> edges;  // original edge indices, increasing
    std::vector<int> faces;  // non-collapsed faces of the piece (indices into sys faces)
};

std::vector<WedgePiece> wedge_pieces(const BendingSystem& sys, const FiberValue& c,
                                     const Tolerances& tol = default_tolerances());

enum class PieceKind { Sphere, Rigid, RigidTorus };
enum class FiberType { I, II };

struct PieceModel {
    PieceKind kind = PieceKind::Sphere;
    int torus_rank = 0;
    std::vector<int> edges;
    bool lagrangian_piece = false;  // digon, nondegenerate triangle or regular sub-fiber
};

struct FiberModel {
    int n = 0;
    int p = 0, q = 0, k = 0;
    FiberType type = FiberType::II;
    bool lagrangian = false;
    int dim_total = 0;
    int dim_quotient = 0;
    std::vector<PieceModel> pieces;
    std::vector<int> vanishing;  // indices of chosen diagonals with c_k = 0
    bool singular = false;
    bool boundary_case = false;
};

FiberModel classify_fiber(const BendingSystem& sys, const FiberValue& c,
                          const Tolerances& tol = default_tolerances());

// n-3 bending fields, then for each wedge piece the rotations of its edges about e1, e2, e3.
std::vector<TangentVector> tangent_generators(const BendingSystem& sys, const Polygon& u, const FiberValue& c,
                                              const Tolerances& tol = default_tolerances());

// Rank of the 3n x m matrix of stacked fields; singular values <= rel * max(sigma_max, scale)
// count as zero.  Pass the size of the unprojected data as scale when the fields are projections.
int numerical_rank(const std::vector<TangentVector>& fields, double rel, double scale = 0);

struct IsotropyReport {
    bool pass = false;
    double max_abs_omega = 0;
    double threshold = 0;
    std::uint64_t seed = 0;
    int samples = 0;
    std::vector<double> sample_max;
    std::vector<int> sample_rank;
    FiberModel model;
};

IsotropyReport certify_isotropy(const BendingSystem& sys, const FiberValue& c, int samples, std::uint64_t seed,
                                const Tolerances& tol = default_tolerances());

struct OpenFacePerturbation {
    Polygon polygon;
    SideLengths r;
};

// Moves the middle vertex j of a degenerate face (i < j < k) by t x, x unit and orthogonal to d_ij.
OpenFacePerturbation perturb_open_face(const BendingSystem& sys, const Polygon& u, const Face& face, double t,
                                       std::optional<Vec3> x = std::nullopt,
                                       const Tolerances& tol = default_tolerances());

struct VanishingWalk {
    int k1 = 0, p1 = 0, k2 = 0;  // bending arc runs over edges k1 .. k2-1 cyclically
    int p0 = 0;
};

VanishingWalk vanishing_walk(const BendingSystem& sys, const Polygon& u, int k,
                             const Tolerances& tol = default_tolerances());
// Bends u along d_{k1,k2} by angle t so that the vanishing diagonal k opens up.
Polygon perturb_vanishing_diagonal(const BendingSystem& sys, const Polygon& u, int k, double t,
                                   const Tolerances& tol = default_tolerances());

std::string to_string(FaceState s);
std::string to_string(PieceKind k);
std::string to_string(FiberType t);

}  // namespace polybend
