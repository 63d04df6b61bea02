#include "polybend/fibers.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "polybend/errors.hpp"
#include "polybend/parallel.hpp"

namespace polybend {

std::string to_string(FaceState s) {
    switch (s) {
        case FaceState::Nondegenerate: return "Nondegenerate";
        case FaceState::DegenerateCollinear: return "DegenerateCollinear";
        case FaceState::HasZeroDiagonalSide: return "HasZeroDiagonalSide";
    }
    return "?";
}

std::string to_string(PieceKind k) {
    switch (k) {
        case PieceKind::Sphere: return "Sphere";
        case PieceKind::Rigid: return "Rigid";
        case PieceKind::RigidTorus: return "RigidTorus";
    }
    return "?";
}

std::string to_string(FiberType t) { return t == FiberType::I ? "I" : "II"; }

namespace {

constexpr double kExact = 64 * std::numeric_limits<double>::epsilon();

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void join(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

FaceStatus status_from_sides(const Face& f, const std::array<double, 3>& s, const std::array<bool, 3>& is_diag,
                             double band, double P) {
    FaceStatus st;
    st.face = f;
    st.sides = s;
    for (int a = 0; a < 3; ++a)
        if (is_diag[a] && s[a] <= band) {
            st.status = FaceState::HasZeroDiagonalSide;
            st.boundary_case = st.boundary_case || s[a] > kExact * P;
        }
    const int big = static_cast<int>(std::max_element(s.begin(), s.end()) - s.begin());
    const double gap = s[0] + s[1] + s[2] - 2 * s[big];
    const bool collinear = std::fabs(gap) <= band;
    if (st.status != FaceState::HasZeroDiagonalSide && collinear) {
        st.status = FaceState::DegenerateCollinear;
        st.boundary_case = std::fabs(gap) > kExact * P;
    }
    if (st.status != FaceState::Nondegenerate)
        for (int a = 0; a < 3; ++a) st.alpha[a] = (a == big ? -1.0 : 1.0) * s[a];
    return st;
}

std::vector<FaceStatus> statuses_from_lengths(const BendingSystem& sys, const std::vector<double>& ell,
                                              const Tolerances& tol) {
    const double P = sys.r.perimeter();
    const double band = tol.equality * P;
    std::vector<FaceStatus> out;
    for (const Face& f : sys.diags.faces()) {
        const auto s = face_side_lengths(sys, f, ell);
        const std::array<bool, 3> is_diag{!sys.diags.is_side(f.i, f.j), !sys.diags.is_side(f.j, f.k),
                                          !sys.diags.is_side(f.i, f.k)};
        out.push_back(status_from_sides(f, s, is_diag, band, P));
    }
    return out;
}

std::vector<bool> vanishing_mask(const BendingSystem& sys, const std::vector<double>& ell, const Tolerances& tol) {
    const double band = tol.equality * sys.r.perimeter();
    std::vector<bool> v(ell.size());
    for (std::size_t k = 0; k < ell.size(); ++k) v[k] = ell[k] <= band;
    return v;
}

std::vector<WedgePiece> pieces_from_lengths(const BendingSystem& sys, const std::vector<double>& ell,
                                            const Tolerances& tol) {
    const auto& ds = sys.diags;
    const auto& faces = ds.faces();
    const int nf = static_cast<int>(faces.size());
    const auto zero = vanishing_mask(sys, ell, tol);
    DisjointSets groups(nf);
    for (int k = 0; k < ds.size(); ++k)
        if (!zero[k]) groups.join(ds.inner_face(k), ds.outer_face(k));

    std::map<int, WedgePiece> by_root;
    for (int f = 0; f < nf; ++f) {
        const Face& F = faces[f];
        WedgePiece& piece = by_root[groups.find(f)];
        bool collapsed = false;
        const std::array<Chord, 3> sides{Chord{F.i, F.j}, Chord{F.j, F.k}, Chord{F.i, F.k}};
        for (const Chord& c : sides) {
            const int k = ds.chord_index(c.i, c.j);
            if (k < 0)
                piece.edges.push_back(c.j == c.i + 1 ? c.i : ds.n() - 1);
            else if (zero[k])
                collapsed = true;
        }
        if (!collapsed) piece.faces.push_back(f);
    }
    std::vector<WedgePiece> out;
    for (auto& [root, piece] : by_root) {
        if (piece.edges.empty()) continue;
        std::sort(piece.edges.begin(), piece.edges.end());
        out.push_back(std::move(piece));
    }
    std::sort(out.begin(), out.end(), [](const WedgePiece& a, const WedgePiece& b) { return a.edges < b.edges; });
    return out;
}

// Recursive model of one wedge piece, on vertex classes (vertices glued by vanishing diagonals).
class PieceClassifier {
public:
    PieceClassifier(const std::vector<FaceStatus>& st, const std::vector<int>& vertex_class)
        : st_(st), cls_(vertex_class) {}

    struct Result {
        PieceKind kind;
        int rank;
    };

    Result classify(const WedgePiece& piece) {
        std::vector<int> verts;
        for (int e : piece.edges) verts.push_back(cls_[e]);
        return recurse(verts, piece.faces);
    }

private:
    Result recurse(const std::vector<int>& verts, const std::vector<int>& candidate_faces) {
        const int m = static_cast<int>(verts.size());
        if (m <= 2) return {PieceKind::Sphere, 0};
        std::vector<int> faces;
        for (int f : candidate_faces) {
            const Face& F = st_[f].face;
            if (contains(verts, cls_[F.i]) && contains(verts, cls_[F.j]) && contains(verts, cls_[F.k]))
                faces.push_back(f);
        }
        int split = -1;
        for (int f : faces)
            if (st_[f].status != FaceState::Nondegenerate) {
                split = f;
                break;
            }
        if (m == 3) return split < 0 ? Result{PieceKind::Rigid, 0} : Result{PieceKind::Sphere, 0};
        if (split < 0) return {PieceKind::RigidTorus, m - 3};

        const Face& F = st_[split].face;
        std::array<int, 3> pos{index_of(verts, cls_[F.i]), index_of(verts, cls_[F.j]), index_of(verts, cls_[F.k])};
        std::sort(pos.begin(), pos.end());
        int rank = 0, rigid = 0;
        for (int s = 0; s < 3; ++s) {
            const int from = pos[s], to = pos[(s + 1) % 3];
            std::vector<int> sub;
            for (int t = from;; t = (t + 1) % m) {
                sub.push_back(verts[t]);
                if (t == to) break;
            }
            const Result r = recurse(sub, faces);
            if (r.kind != PieceKind::Sphere) {
                ++rigid;
                rank += r.rank;
            }
        }
        if (rigid == 0) return {PieceKind::Sphere, 0};
        return {PieceKind::RigidTorus, rank + rigid - 1};
    }

    static bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }
    static int index_of(const std::vector<int>& v, int x) {
        return static_cast<int>(std::find(v.begin(), v.end(), x) - v.begin());
    }

    const std::vector<FaceStatus>& st_;
    const std::vector<int>& cls_;
};

}  // namespace

std::vector<FaceStatus> face_statuses(const BendingSystem& sys, const FiberValue& c, const Tolerances& tol) {
    return statuses_from_lengths(sys, diagonal_lengths(sys, c, tol), tol);
}

bool is_singular_fiber(const BendingSystem& sys, const FiberValue& c, const Tolerances& tol) {
    for (const auto& s : face_statuses(sys, c, tol))
        if (s.status != FaceState::Nondegenerate) return true;
    return false;
}

std::vector<WedgePiece> wedge_pieces(const BendingSystem& sys, const FiberValue& c, const Tolerances& tol) {
    return pieces_from_lengths(sys, diagonal_lengths(sys, c, tol), tol);
}

FiberModel classify_fiber(const BendingSystem& sys, const FiberValue& c, const Tolerances& tol) {
    const auto ell = diagonal_lengths(sys, c, tol);
    const auto st = statuses_from_lengths(sys, ell, tol);
    const auto zero = vanishing_mask(sys, ell, tol);
    const int n = sys.n();

    DisjointSets vertex_sets(n);
    for (int k = 0; k < sys.diags.size(); ++k)
        if (zero[k]) vertex_sets.join(sys.diags[k].i, sys.diags[k].j);
    std::vector<int> cls(n);
    for (int v = 0; v < n; ++v) cls[v] = vertex_sets.find(v);

    FiberModel model;
    model.n = n;
    for (int k = 0; k < sys.diags.size(); ++k)
        if (zero[k]) model.vanishing.push_back(k);
    for (const auto& s : st) {
        model.singular = model.singular || s.status != FaceState::Nondegenerate;
        model.boundary_case = model.boundary_case || s.boundary_case;
    }

    PieceClassifier classifier(st, cls);
    for (const auto& piece : pieces_from_lengths(sys, ell, tol)) {
        const auto r = classifier.classify(piece);
        PieceModel pm{r.kind, r.rank, piece.edges, false};
        const int sides = static_cast<int>(piece.edges.size());
        bool regular = true;
        for (int f : piece.faces) regular = regular && st[f].status == FaceState::Nondegenerate;
        pm.lagrangian_piece = sides == 2 || regular;
        model.pieces.push_back(pm);
        if (r.kind == PieceKind::Sphere) {
            ++model.k;
        } else {
            ++model.p;
            model.q += r.rank;
        }
    }
    model.type = model.p >= 1 ? FiberType::I : FiberType::II;
    model.dim_total = 3 * model.p + model.q + 2 * model.k;
    model.dim_quotient =
        model.type == FiberType::I ? 3 * (model.p - 1) + model.q + 2 * model.k : std::max(2 * model.k - 3, 0);
    model.lagrangian = model.type == FiberType::I && model.dim_quotient == n - 3;
    return model;
}

std::vector<TangentVector> tangent_generators(const BendingSystem& sys, const Polygon& u, const FiberValue& c,
                                              const Tolerances& tol) {
    const auto measured = momentum_F(sys, u);
    const double P = sys.r.perimeter();
    for (std::size_t k = 0; k < c.c.size(); ++k)
        if (k >= measured.c.size() || std::fabs(measured.c[k] - c.c[k]) > 1e-8 * std::max(1.0, P * P))
            throw Error(ErrorCode::NotOnFiber, "F_" + std::to_string(k) + " differs from the fiber value");
    if (measured.c.size() != c.c.size()) throw Error(ErrorCode::NotOnFiber, "fiber value has the wrong size");

    std::vector<TangentVector> gens;
    for (int k = 0; k < sys.diags.size(); ++k) gens.push_back(bending_field(sys, u, k));
    for (const auto& piece : wedge_pieces(sys, c, tol))
        for (const Vec3& axis : {e1, e2, e3}) {
            TangentVector Y{std::vector<Vec3>(u.u.size())};
            for (int m : piece.edges) Y.X[m] = cross(axis, u.u[m]);
            gens.push_back(std::move(Y));
        }
    return gens;
}

int numerical_rank(const std::vector<TangentVector>& fields, double rel, double scale) {
    if (fields.empty()) return 0;
    const int rows = 3 * static_cast<int>(fields[0].X.size());
    Eigen::MatrixXd A(rows, static_cast<int>(fields.size()));
    for (int col = 0; col < A.cols(); ++col)
        for (int m = 0; m < rows / 3; ++m) {
            const Vec3& v = fields[col].X[m];
            A(3 * m, col) = v.x;
            A(3 * m + 1, col) = v.y;
            A(3 * m + 2, col) = v.z;
        }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& s = svd.singularValues();
    const double top = std::max(s.size() ? s[0] : 0.0, scale);
    if (top == 0) return 0;
    int rank = 0;
    for (int a = 0; a < s.size(); ++a)
        if (s[a] > rel * top) ++rank;
    return rank;
}

IsotropyReport certify_isotropy(const BendingSystem& sys, const FiberValue& c, int samples, std::uint64_t seed,
                                const Tolerances& tol) {
    IsotropyReport rep;
    rep.model = classify_fiber(sys, c, tol);
    rep.seed = seed;
    rep.samples = samples;
    rep.threshold = tol.isotropy;
    const auto polys = sample_fiber(sys, c, samples, seed, tol);
    rep.sample_max.assign(polys.size(), 0.0);
    rep.sample_rank.assign(polys.size(), 0);
    parallel_for(polys.size(), [&](std::size_t s) {
        const Polygon& u = polys[s];
        auto gens = tangent_generators(sys, u, c, tol);
        rep.sample_rank[s] = numerical_rank(gens, tol.rank);
        std::vector<TangentVector> unit;
        const double floor = 1e-14 * sys.r.perimeter();
        for (auto& g : gens) {
            const double len = std::sqrt(metric(u, g, g));
            if (len <= floor) continue;
            for (auto& v : g.X) v = v / len;
            unit.push_back(std::move(g));
        }
        double worst = 0;
        for (std::size_t a = 0; a < unit.size(); ++a)
            for (std::size_t b = a + 1; b < unit.size(); ++b)
                worst = std::max(worst, std::fabs(omega_unchecked(u, unit[a], unit[b])));
        rep.sample_max[s] = worst;
    });
    for (double m : rep.sample_max) rep.max_abs_omega = std::max(rep.max_abs_omega, m);
    rep.pass = rep.max_abs_omega < tol.isotropy;
    return rep;
}

OpenFacePerturbation perturb_open_face(const BendingSystem& sys, const Polygon& u, const Face& face, double t,
                                       std::optional<Vec3> x, const Tolerances& tol) {
    const auto& faces = sys.diags.faces();
    if (std::find(faces.begin(), faces.end(), face) == faces.end())
        throw Error(ErrorCode::ContractViolation, "face is not an adapted face of the system");
    const double P = sys.r.perimeter();
    const double band = tol.equality * P;
    const Vec3 dij = diagonal(u, face.i, face.j);
    const std::array<double, 3> s{norm(dij), norm(diagonal(u, face.j, face.k)), norm(diagonal(u, face.i, face.k))};
    for (double side : s)
        if (side <= band) throw Error(ErrorCode::ZeroDiagonal, "degenerate face has a vanishing side");
    const double big = std::max({s[0], s[1], s[2]});
    if (std::fabs(s[0] + s[1] + s[2] - 2 * big) > band)
        throw Error(ErrorCode::FaceNotDegenerate, "face sides satisfy a strict triangle inequality");
    if (t == 0) return {u, u.r};

    Vec3 dir = x ? *x : unit_perpendicular(dij);
    if (std::fabs(norm(dir) - 1) > tol.kernel || std::fabs(dot(dir, dij)) > tol.kernel * s[0])
        throw Error(ErrorCode::ContractViolation, "x must be a unit vector orthogonal to d_ij");
    const int a = face.j - 1, b = face.j;
    const Vec3 va = u.r[a] * u.u[a] + t * dir;
    const Vec3 vb = u.r[b] * u.u[b] - t * dir;
    std::vector<double> r = u.r.values();
    r[a] = norm(va);
    r[b] = norm(vb);
    std::vector<Vec3> edges = u.u;
    edges[a] = va / r[a];
    edges[b] = vb / r[b];
    SideLengths rt(r);
    return {Polygon{rt, std::move(edges)}, rt};
}

VanishingWalk vanishing_walk(const BendingSystem& sys, const Polygon& u, int k, const Tolerances& tol) {
    const auto& ds = sys.diags;
    if (k < 0 || k >= ds.size()) throw Error(ErrorCode::IndexOutOfRange, "diagonal index " + std::to_string(k));
    const double band = tol.equality * sys.r.perimeter();
    const Chord c = ds[k];
    if (norm(diagonal(u, c)) > band)
        throw Error(ErrorCode::DiagonalNotVanishing, "diagonal " + std::to_string(k) + " does not vanish");
    const int p0 = c.i, p1 = c.j;
    auto coincident = [&](int a, int b) { return norm(diagonal(u, a, b)) <= band; };

    // Inner side: stay strictly inside (p0, p1) while the apex coincides with p1.
    int face = ds.inner_face(k);
    int k1 = ds.third_vertex(face, p0, p1);
    while (coincident(k1, p1)) {
        const int kk = ds.chord_index(k1, p1);
        if (kk < 0) break;
        face = ds.inner_face(kk) == face ? ds.outer_face(kk) : ds.inner_face(kk);
        k1 = ds.third_vertex(face, k1, p1);
    }
    // Outer side: walk away from p1 across chords (p1, k2) through coincident vertices.
    face = ds.outer_face(k);
    int k2 = ds.third_vertex(face, p0, p1);
    while (coincident(p1, k2)) {
        const int kk = ds.chord_index(p1, k2);
        if (kk < 0) break;
        face = ds.inner_face(kk) == face ? ds.outer_face(kk) : ds.inner_face(kk);
        k2 = ds.third_vertex(face, p1, k2);
    }
    const Vec3 v1 = diagonal(u, k1, p1), v2 = diagonal(u, p1, k2);
    if (norm(cross(v1, v2)) <= tol.equality * norm(v1) * norm(v2) || norm(v1) <= band || norm(v2) <= band)
        throw Error(ErrorCode::NotInDenseSet, "d_{k1,p1} x d_{p1,k2} vanishes at this polygon");
    return {k1, p1, k2, p0};
}

Polygon perturb_vanishing_diagonal(const BendingSystem& sys, const Polygon& u, int k, double t,
                                   const Tolerances& tol) {
    const VanishingWalk w = vanishing_walk(sys, u, k, tol);
    if (t == 0) return u;
    const int n = u.n();
    // Edges k1, k1+1, ..., k2-1 taken cyclically; their sum is the rotation axis.
    std::vector<int> arc;
    for (int m = w.k1; m != w.k2; m = (m + 1) % n) arc.push_back(m);
    Vec3 axis;
    for (int m : arc) axis += u.r[m] * u.u[m];
    const Rotation R = Rotation::about(axis / norm(axis), t);
    Polygon out = u;
    for (int m : arc) out.u[m] = R.apply(u.u[m]);
    return out;
}

}  // namespace polybend
