#include "polybend/bending.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>
#include <string>

#include "polybend/errors.hpp"

namespace polybend {

namespace {

std::string chord_str(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

std::string face_str(const Face& f) {
    return "(" + std::to_string(f.i) + "," + std::to_string(f.j) + "," + std::to_string(f.k) + ")";
}

bool strictly_between(int x, int i, int j) { return i < x && x < j; }

}  // namespace

bool chords_cross(const Chord& a, const Chord& b) {
    if (a.i == b.i || a.i == b.j || a.j == b.i || a.j == b.j) return false;
    return strictly_between(b.i, a.i, a.j) != strictly_between(b.j, a.i, a.j);
}

bool DiagonalSet::is_side(int a, int b) const {
    if (a > b) std::swap(a, b);
    return b == a + 1 || (a == 0 && b == n_ - 1);
}

int DiagonalSet::chord_index(int a, int b) const {
    if (a > b) std::swap(a, b);
    if (is_side(a, b)) return -1;
    for (int k = 0; k < size(); ++k)
        if (diags_[k].i == a && diags_[k].j == b) return k;
    throw Error(ErrorCode::ContractViolation, "chord " + chord_str(a, b) + " is not in the triangulation");
}

int DiagonalSet::third_vertex(int f, int a, int b) const {
    const Face& F = faces_[f];
    for (int v : {F.i, F.j, F.k})
        if (v != a && v != b) return v;
    throw Error(ErrorCode::ContractViolation, "face has no third vertex");
}

DiagonalSet validate_diagonals(int n, std::vector<Chord> diags) {
    if (n < 4) throw Error(ErrorCode::ContractViolation, "n >= 4 required, got " + std::to_string(n));
    for (auto& d : diags) {
        if (d.i > d.j) std::swap(d.i, d.j);
        if (d.i < 0 || d.j >= n)
            throw Error(ErrorCode::IndexOutOfRange, "chord " + chord_str(d.i, d.j) + " for n=" + std::to_string(n));
        if (d.j - d.i < 2 || (d.i == 0 && d.j == n - 1))
            throw Error(ErrorCode::SideNotDiagonal, "chord " + chord_str(d.i, d.j) + " is a side");
    }
    if (static_cast<int>(diags.size()) != n - 3)
        throw Error(ErrorCode::WrongCount,
                    "expected " + std::to_string(n - 3) + " diagonals, got " + std::to_string(diags.size()));
    for (std::size_t a = 0; a < diags.size(); ++a)
        for (std::size_t b = a + 1; b < diags.size(); ++b) {
            if (diags[a] == diags[b])
                throw Error(ErrorCode::WrongCount, "duplicate diagonal " + chord_str(diags[a].i, diags[a].j));
            if (chords_cross(diags[a], diags[b]))
                throw Error(ErrorCode::CrossingDiagonals, chord_str(diags[a].i, diags[a].j) + " crosses " +
                                                              chord_str(diags[b].i, diags[b].j));
        }

    DiagonalSet ds;
    ds.n_ = n;
    ds.diags_ = std::move(diags);
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (int v = 0; v < n; ++v) {
        const int w = (v + 1) % n;
        adj[v][w] = adj[w][v] = 1;
    }
    for (const auto& d : ds.diags_) adj[d.i][d.j] = adj[d.j][d.i] = 1;
    // In a triangulation of a convex polygon every 3-clique of chords is a face.
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (!adj[a][b]) continue;
            for (int c = b + 1; c < n; ++c)
                if (adj[a][c] && adj[b][c]) ds.faces_.push_back({a, b, c});
        }
    ds.inner_.assign(ds.size(), -1);
    ds.outer_.assign(ds.size(), -1);
    for (int k = 0; k < ds.size(); ++k) {
        const Chord d = ds.diags_[k];
        for (int f = 0; f < static_cast<int>(ds.faces_.size()); ++f) {
            const Face& F = ds.faces_[f];
            const bool has_i = F.i == d.i || F.j == d.i || F.k == d.i;
            const bool has_j = F.i == d.j || F.j == d.j || F.k == d.j;
            if (!has_i || !has_j) continue;
            const int x = ds.third_vertex(f, d.i, d.j);
            (strictly_between(x, d.i, d.j) ? ds.inner_[k] : ds.outer_[k]) = f;
        }
    }
    return ds;
}

DiagonalSet caterpillar(int n) {
    std::vector<Chord> d;
    for (int j = 2; j <= n - 2; ++j) d.push_back({0, j});
    return validate_diagonals(n, d);
}

DiagonalSet snake(int n) {
    std::vector<int> seq{0, 1};
    int lo = 2, hi = n - 1;
    bool take_hi = true;
    while (lo <= hi) {
        seq.push_back(take_hi ? hi-- : lo++);
        take_hi = !take_hi;
    }
    std::vector<Chord> d;
    for (std::size_t t = 1; t + 1 < seq.size(); ++t) {
        Chord c{std::min(seq[t], seq[t + 1]), std::max(seq[t], seq[t + 1])};
        if (c.j - c.i >= 2 && !(c.i == 0 && c.j == n - 1)) d.push_back(c);
    }
    return validate_diagonals(n, d);
}

std::vector<DiagonalSet> enumerate_triangulations(int n) {
    if (n < 4) throw Error(ErrorCode::ContractViolation, "n >= 4 required");
    // Triangulations of the sub-polygon a..b, keyed by (a, b), as chord lists.
    std::vector<std::vector<std::vector<std::vector<Chord>>>> memo(
        n, std::vector<std::vector<std::vector<Chord>>>(n));
    std::vector<std::vector<char>> done(n, std::vector<char>(n, 0));
    std::function<const std::vector<std::vector<Chord>>&(int, int)> sub = [&](int a, int b)
        -> const std::vector<std::vector<Chord>>& {
        auto& out = memo[a][b];
        if (done[a][b]) return out;
        done[a][b] = 1;
        if (b - a < 2) {
            out.push_back({});
            return out;
        }
        for (int m = a + 1; m < b; ++m) {
            const auto& left = sub(a, m);
            const auto& right = sub(m, b);
            for (const auto& L : left)
                for (const auto& R : right) {
                    std::vector<Chord> t = L;
                    t.insert(t.end(), R.begin(), R.end());
                    if (m - a >= 2) t.push_back({a, m});
                    if (b - m >= 2) t.push_back({m, b});
                    out.push_back(std::move(t));
                }
        }
        return out;
    };
    std::vector<DiagonalSet> result;
    for (auto t : sub(0, n - 1)) {
        std::sort(t.begin(), t.end());
        result.push_back(validate_diagonals(n, t));
    }
    return result;
}

BendingSystem::BendingSystem(SideLengths r_, DiagonalSet d_) : r(std::move(r_)), diags(std::move(d_)) {
    if (static_cast<int>(r.size()) != diags.n())
        throw Error(ErrorCode::LengthMismatch, std::to_string(r.size()) + " side lengths for an n=" +
                                                   std::to_string(diags.n()) + " triangulation");
}

double BendingSystem::chord_length(int a, int b, const std::vector<double>& ell) const {
    if (a > b) std::swap(a, b);
    const int k = diags.chord_index(a, b);
    if (k >= 0) return ell[k];
    return b == a + 1 ? r[a] : r[n() - 1];
}

std::array<double, 3> face_side_lengths(const BendingSystem& sys, const Face& f, const std::vector<double>& ell) {
    return {sys.chord_length(f.i, f.j, ell), sys.chord_length(f.j, f.k, ell), sys.chord_length(f.i, f.k, ell)};
}

void require_feasible(const BendingSystem& sys, const std::vector<double>& ell, const Tolerances& tol) {
    const double band = tol.equality * sys.r.perimeter();
    for (const Face& f : sys.diags.faces()) {
        const auto s = face_side_lengths(sys, f, ell);
        const double big = std::max({s[0], s[1], s[2]});
        const double gap = s[0] + s[1] + s[2] - 2 * big;
        if (gap < -band)
            throw Error(ErrorCode::InfeasibleFiber, "face " + face_str(f) + " violates the triangle inequality (" +
                                                        std::to_string(s[0]) + ", " + std::to_string(s[1]) + ", " +
                                                        std::to_string(s[2]) + ")");
    }
}

std::vector<double> diagonal_lengths(const BendingSystem& sys, const FiberValue& c, const Tolerances& tol) {
    if (static_cast<int>(c.c.size()) != sys.diags.size())
        throw Error(ErrorCode::LengthMismatch, "fiber value needs " + std::to_string(sys.diags.size()) + " entries");
    const double P = sys.r.perimeter();
    std::vector<double> ell(c.c.size());
    for (std::size_t k = 0; k < c.c.size(); ++k) {
        if (!std::isfinite(c.c[k]) || c.c[k] < -tol.equality * P * P)
            throw Error(ErrorCode::InfeasibleFiber, "c[" + std::to_string(k) + "] must be nonnegative");
        ell[k] = std::sqrt(2.0 * std::max(0.0, c.c[k]));
    }
    require_feasible(sys, ell, tol);
    return ell;
}

namespace {

void require_lengths(const BendingSystem& sys, const Polygon& u) {
    if (u.n() != sys.n()) throw Error(ErrorCode::LengthMismatch, "polygon size does not match the system");
    for (int i = 0; i < u.n(); ++i)
        if (std::fabs(u.r[i] - sys.r[i]) > 1e-12 * std::max(1.0, sys.r[i]))
            throw Error(ErrorCode::LengthMismatch, "side length " + std::to_string(i) + " differs from the system");
}

void require_index(const BendingSystem& sys, int k) {
    if (k < 0 || k >= sys.diags.size())
        throw Error(ErrorCode::IndexOutOfRange, "diagonal index " + std::to_string(k));
}

}  // namespace

FiberValue momentum_F(const BendingSystem& sys, const Polygon& u) {
    require_lengths(sys, u);
    FiberValue out;
    for (const auto& d : sys.diags.diagonals()) out.c.push_back(0.5 * norm2(diagonal(u, d)));
    return out;
}

TangentVector chord_bending_field(const Polygon& u, const Chord& c) {
    const Vec3 d = diagonal(u, c);
    TangentVector X{std::vector<Vec3>(u.u.size())};
    for (int m = c.i; m < c.j; ++m) X.X[m] = cross(d, u.u[m]);
    return X;
}

TangentVector bending_field(const BendingSystem& sys, const Polygon& u, int k) {
    require_lengths(sys, u);
    require_index(sys, k);
    return chord_bending_field(u, sys.diags[k]);
}

TangentVector inverse_bending_field(const BendingSystem& sys, const Polygon& u, int k) {
    require_lengths(sys, u);
    require_index(sys, k);
    const Chord c = sys.diags[k];
    const Vec3 d = diagonal(u, c);
    TangentVector X{std::vector<Vec3>(u.u.size())};
    for (int m = 0; m < u.n(); ++m)
        if (m < c.i || m >= c.j) X.X[m] = -cross(d, u.u[m]);
    return X;
}

Polygon chord_flow(const Polygon& u, const Chord& c, double t, bool normalized, const Tolerances& tol) {
    const Vec3 d = diagonal(u, c);
    const double len = norm(d);
    if (normalized && len <= tol.equality * u.r.perimeter())
        throw Error(ErrorCode::ZeroDiagonal, "normalized flow along vanishing chord " + chord_str(c.i, c.j));
    if (t == 0 || len == 0) return u;
    const Rotation R = Rotation::about(d / len, normalized ? t : t * len);
    Polygon out = u;
    for (int m = c.i; m < c.j; ++m) out.u[m] = R.apply(u.u[m]);
    return out;
}

Polygon flow(const BendingSystem& sys, const Polygon& u, int k, double t, bool normalized, const Tolerances& tol) {
    require_lengths(sys, u);
    require_index(sys, k);
    return chord_flow(u, sys.diags[k], t, normalized, tol);
}

double chord_bracket(const Polygon& u, const Chord& a, const Chord& b) {
    return omega_unchecked(u, chord_bending_field(u, a), chord_bending_field(u, b));
}

double poisson_bracket(const BendingSystem& sys, const Polygon& u, int k, int m) {
    require_lengths(sys, u);
    require_index(sys, k);
    require_index(sys, m);
    if (k == m) return 0.0;
    return chord_bracket(u, sys.diags[k], sys.diags[m]);
}

Vec3 face_normal(const std::vector<Vec3>& p, const Face& f) {
    return cross(p[f.j] - p[f.i], p[f.k] - p[f.i]);
}

ActionAngle action_angle(const BendingSystem& sys, const Polygon& u, const Tolerances& tol) {
    require_lengths(sys, u);
    const double P = sys.r.perimeter();
    const auto p = u.vertices();
    const auto& faces = sys.diags.faces();
    std::vector<Vec3> normals;
    for (const Face& f : faces) {
        const Vec3 nf = face_normal(p, f);
        if (norm(nf) <= tol.equality * P * P)
            throw Error(ErrorCode::SingularPoint, "face " + face_str(f) + " is degenerate");
        normals.push_back(nf / norm(nf));
    }
    ActionAngle out;
    for (int k = 0; k < sys.diags.size(); ++k) {
        const Vec3 d = diagonal(u, sys.diags[k]);
        const double len = norm(d);
        if (len <= tol.equality * P)
            throw Error(ErrorCode::SingularPoint, "diagonal " + std::to_string(k) + " vanishes");
        const Vec3& n_in = normals[sys.diags.inner_face(k)];
        const Vec3& n_out = normals[sys.diags.outer_face(k)];
        double theta = std::atan2(dot(cross(n_out, n_in), d / len), dot(n_out, n_in));
        if (theta < 0) theta += 2 * M_PI;
        if (theta >= 2 * M_PI) theta -= 2 * M_PI;
        out.length.push_back(len);
        out.angle.push_back(theta);
    }
    return out;
}

namespace {

struct Hinge {
    int parent, child;
    int a, b;  // shared chord, a < b
    int x;     // vertex of the child face off the chord
    int diag;
    bool child_inner;
};

// Breadth-first order from the face holding side (0, n-1).
std::vector<Hinge> hinge_tree(const DiagonalSet& ds, int& root) {
    const auto& faces = ds.faces();
    const int n = ds.n();
    root = -1;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f)
        if (faces[f].i == 0 && faces[f].k == n - 1) root = f;
    std::vector<Hinge> order;
    std::vector<char> seen(faces.size(), 0);
    std::queue<int> todo;
    todo.push(root);
    seen[root] = 1;
    while (!todo.empty()) {
        const int f = todo.front();
        todo.pop();
        const Face& F = faces[f];
        const std::array<Chord, 3> sides{Chord{F.i, F.j}, Chord{F.j, F.k}, Chord{F.i, F.k}};
        for (const Chord& c : sides) {
            const int k = ds.chord_index(c.i, c.j);
            if (k < 0) continue;
            const int g = ds.inner_face(k) == f ? ds.outer_face(k) : ds.inner_face(k);
            if (seen[g]) continue;
            seen[g] = 1;
            todo.push(g);
            order.push_back({f, g, c.i, c.j, ds.third_vertex(g, c.i, c.j), k, ds.inner_face(k) == g});
        }
    }
    return order;
}

// Triangle height over side l with the other sides la, lb.  Kahan's ordering keeps
// exactly degenerate triangles at zero; defects inside band snap to zero as well.
double triangle_height(double l, double la, double lb, double band) {
    std::array<double, 3> s{l, la, lb};
    std::sort(s.begin(), s.end(), std::greater<>());
    const double a = s[0], b = s[1], c = s[2];
    if (b + c - a <= band) return 0.0;
    const double q = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    return 0.5 * std::sqrt(std::max(0.0, q)) / l;
}

// Third vertex of a triangle hinged on segment pa -> pb of nominal length l, lying in
// the plane with normal np and oriented so the child's sorted-vertex normal agrees with np.
Vec3 place_in_plane(const Vec3& pa, const Vec3& pb, double l, double la, double lb, const Vec3& np, bool x_inside,
                    double band) {
    const Vec3 ab = pb - pa;
    const Vec3 ahat = ab / norm(ab);
    Vec3 w = cross(np, ahat);
    w = w / norm(w);
    const double s = (l * l + la * la - lb * lb) / (2 * l);
    const double h = triangle_height(l, la, lb, band);
    const double sigma = x_inside ? -1.0 : 1.0;
    return pa + s * ahat + sigma * h * w;
}

using ZeroHingeRotation = std::function<Rotation(int)>;

Polygon build_impl(const BendingSystem& sys, const std::vector<double>& ell, const std::vector<double>& theta,
                   const ZeroHingeRotation& zero_rotation, const Tolerances& tol) {
    const int n = sys.n();
    const double zero_band = tol.equality * sys.r.perimeter();
    int root = -1;
    const auto order = hinge_tree(sys.diags, root);
    const auto& faces = sys.diags.faces();
    std::vector<Vec3> p(n);
    std::vector<Vec3> normal(faces.size());

    const Face& R = faces[root];
    p[0] = {};
    p[n - 1] = sys.r[n - 1] * e1;
    p[R.j] = place_in_plane(p[0], p[n - 1], sys.r[n - 1], sys.chord_length(0, R.j, ell),
                            sys.chord_length(R.j, n - 1, ell), e3, true, zero_band);
    normal[root] = e3;

    for (std::size_t h = 0; h < order.size(); ++h) {
        const Hinge& H = order[h];
        const Vec3 np = normal[H.parent];
        const double la = sys.chord_length(H.a, H.x, ell);
        const double lb = sys.chord_length(H.x, H.b, ell);
        if (ell[H.diag] <= zero_band) {
            // Coincident hinge ends: the child swings freely about the shared vertex.
            const Rotation Q = zero_rotation(static_cast<int>(h));
            const Vec3 delta = Q.apply(unit_perpendicular(np));
            p[H.x] = p[H.a] + la * delta;
            normal[H.child] = Q.apply(np);
            continue;
        }
        const bool inside = H.a < H.x && H.x < H.b;
        const Vec3 flat = place_in_plane(p[H.a], p[H.b], ell[H.diag], la, lb, np, inside, zero_band);
        const Vec3 axis = (p[H.b] - p[H.a]) / norm(p[H.b] - p[H.a]);
        const Rotation turn = Rotation::about(axis, H.child_inner ? theta[H.diag] : -theta[H.diag]);
        p[H.x] = p[H.a] + turn.apply(flat - p[H.a]);
        const Vec3 nc = turn.apply(np);
        normal[H.child] = nc / norm(nc);
    }

    Polygon out{sys.r, std::vector<Vec3>(n)};
    for (int m = 0; m < n; ++m) {
        const Vec3 e = p[(m + 1) % n] - p[m];
        out.u[m] = e / norm(e);
    }
    return out;
}

}  // namespace

Polygon build_polygon(const BendingSystem& sys, const FiberValue& c, const std::vector<double>& theta,
                      const Tolerances& tol) {
    const auto ell = diagonal_lengths(sys, c, tol);
    if (static_cast<int>(theta.size()) != sys.diags.size())
        throw Error(ErrorCode::LengthMismatch, "theta needs " + std::to_string(sys.diags.size()) + " entries");
    return build_impl(sys, ell, theta, [](int) { return Rotation::identity(); }, tol);
}

std::vector<Polygon> sample_fiber(const BendingSystem& sys, const FiberValue& c, int count, std::uint64_t seed,
                                  const Tolerances& tol) {
    const auto ell = diagonal_lengths(sys, c, tol);
    std::vector<Polygon> out;
    out.reserve(std::max(count, 0));
    const int m = sys.diags.size();
    for (int s = 0; s < count; ++s) {
        Rng rng = item_rng(seed, static_cast<std::uint64_t>(s));
        std::vector<double> theta(m);
        for (double& t : theta) t = uniform(rng, 0.0, 2 * M_PI);
        std::vector<Rotation> zero(m);
        for (auto& q : zero) q = random_rotation(rng);
        const Rotation global = random_rotation(rng);
        Polygon u = build_impl(sys, ell, theta, [&](int h) { return zero[h]; }, tol);
        out.push_back(rotated(u, global));
    }
    return out;
}

}  // namespace polybend
