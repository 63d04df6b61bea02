#include "polybend/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polybend/errors.hpp"

namespace polybend {

namespace {

double sqnorm(const std::vector<Complex>& v) {
    double s = 0;
    for (const auto& x : v) s += std::norm(x);
    return s;
}

// <a, b> = sum conj(a) b
Complex hdot(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Complex s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

}  // namespace

TwoFrame validate_frame(std::vector<Complex> z, std::vector<Complex> w, double tol) {
    if (z.size() != w.size() || z.empty()) throw Error(ErrorCode::NotAFrame, "z and w must have the same nonzero length");
    const double nz = std::sqrt(sqnorm(z)), nw = std::sqrt(sqnorm(w));
    if (std::fabs(nz - 1) > tol || std::fabs(nw - 1) > tol)
        throw Error(ErrorCode::NotAFrame, "frame vectors must be unit");
    if (std::abs(hdot(z, w)) > tol) throw Error(ErrorCode::NotAFrame, "frame vectors must be orthogonal");
    return {std::move(z), std::move(w)};
}

TwoFrame random_frame(int n, Rng& rng) {
    if (n < 2) throw Error(ErrorCode::ContractViolation, "a 2-frame needs n >= 2");
    std::vector<Complex> z(n), w(n);
    for (auto& x : z) x = {gaussian(rng), gaussian(rng)};
    for (auto& x : w) x = {gaussian(rng), gaussian(rng)};
    const double nz = std::sqrt(sqnorm(z));
    for (auto& x : z) x /= nz;
    // Two passes of Gram-Schmidt keep <z, w> at rounding level.
    for (int pass = 0; pass < 2; ++pass) {
        const Complex proj = hdot(z, w);
        for (int i = 0; i < n; ++i) w[i] -= proj * z[i];
    }
    const double nw = std::sqrt(sqnorm(w));
    for (auto& x : w) x /= nw;
    return {std::move(z), std::move(w)};
}

Quaternion frame_quaternion(Complex z, Complex w) { return {z.real(), z.imag(), w.real(), w.imag()}; }

Vec3 phi_quat(Complex z, Complex w) {
    const double a = std::norm(z) - std::norm(w);
    const Complex c = 2.0 * std::conj(z) * w;
    return {a, -c.imag(), c.real()};
}

Polygon FramePolygon::polygon() const {
    if (!improper.empty())
        throw Error(ErrorCode::ContractViolation, "frame has improper edges (r_i = 0)");
    std::vector<Vec3> u(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) u[i] = edges[i] / r[i];
    return Polygon{SideLengths(r), std::move(u)};
}

FramePolygon frame_to_polygon(const TwoFrame& f) {
    validate_frame(f.z, f.w);
    FramePolygon out;
    for (int i = 0; i < f.n(); ++i) {
        const Vec3 q = phi_quat(f.z[i], f.w[i]);
        out.edges.push_back(q);
        // |phi| = |z|^2 + |w|^2 exactly; avoids a square root of a square.
        const double r = std::norm(f.z[i]) + std::norm(f.w[i]);
        out.r.push_back(r);
        if (r == 0) out.improper.push_back(i);
    }
    return out;
}

double psi_side(const TwoFrame& f, int i) {
    if (i < 0 || i >= f.n()) throw Error(ErrorCode::IndexOutOfRange, "row " + std::to_string(i));
    return 0.5 * (std::norm(f.z[i]) + std::norm(f.w[i]));
}

Eig2 psi_diagonal(const TwoFrame& f, const std::vector<int>& I) {
    if (I.empty()) throw Error(ErrorCode::ContractViolation, "index set must be nonempty");
    double gzz = 0, gww = 0;
    Complex gzw = 0;
    for (int i : I) {
        if (i < 0 || i >= f.n()) throw Error(ErrorCode::IndexOutOfRange, "row " + std::to_string(i));
        gzz += std::norm(f.z[i]);
        gww += std::norm(f.w[i]);
        gzw += std::conj(f.z[i]) * f.w[i];
    }
    Eig2 e = herm2_eigs(0.5 * gzz, 0.5 * gww, 0.5 * gzw);
    e.lambda2 = std::max(0.0, e.lambda2);
    return e;
}

std::vector<double> check_relation(const TwoFrame& f, const DiagonalSet& ds) {
    if (ds.n() != f.n()) throw Error(ErrorCode::LengthMismatch, "triangulation size differs from the frame");
    const auto poly = frame_to_polygon(f);
    std::vector<double> res;
    for (const Chord& d : ds.diagonals()) {
        std::vector<int> I;
        Vec3 sum;
        double rsum = 0;
        for (int m = d.i; m < d.j; ++m) {
            I.push_back(m);
            sum += poly.edges[m];
            rsum += poly.r[m];
        }
        res.push_back(std::fabs(4 * psi_diagonal(f, I).lambda2 + norm(sum) - rsum));
    }
    return res;
}

FrameSplit split_frame(const TwoFrame& f, std::vector<int> I, double tol) {
    std::sort(I.begin(), I.end());
    I.erase(std::unique(I.begin(), I.end()), I.end());
    for (int i : I)
        if (i < 0 || i >= f.n()) throw Error(ErrorCode::IndexOutOfRange, "row " + std::to_string(i));
    std::vector<int> J;
    for (int i = 0; i < f.n(); ++i)
        if (!std::binary_search(I.begin(), I.end(), i)) J.push_back(i);
    if (I.empty() || J.empty()) throw Error(ErrorCode::DegenerateNormalization, "one block of the split is empty");
    Vec3 partial;
    for (int i : I) partial += phi_quat(f.z[i], f.w[i]);
    if (norm(partial) > tol)
        throw Error(ErrorCode::PartialSumNonzero, "partial sum of edges has norm " + std::to_string(norm(partial)));

    auto block = [&](const std::vector<int>& rows, double& alpha) {
        TwoFrame b;
        for (int i : rows) {
            b.z.push_back(f.z[i]);
            b.w.push_back(f.w[i]);
        }
        const double nz = std::sqrt(sqnorm(b.z));
        if (nz <= tol) throw Error(ErrorCode::DegenerateNormalization, "block has zero norm");
        alpha = 1.0 / nz;
        for (auto& x : b.z) x *= alpha;
        for (auto& x : b.w) x *= alpha;
        return b;
    };
    FrameSplit out;
    out.first = block(I, out.alpha1);
    out.second = block(J, out.alpha2);
    out.first_rows = I;
    out.second_rows = J;
    return out;
}

NullReduction drop_null_coordinates(const TwoFrame& f, double small_tol) {
    NullReduction out;
    for (int i = 0; i < f.n(); ++i) {
        const double s = std::norm(f.z[i]) + std::norm(f.w[i]);
        if (s == 0) continue;
        if (s <= small_tol) out.small.push_back(i);
        out.kept.push_back(i);
        out.frame.z.push_back(f.z[i]);
        out.frame.w.push_back(f.w[i]);
    }
    return out;
}

TwoFrame right_multiply(const TwoFrame& f, const Quaternion& P, const std::vector<int>& I) {
    // (z + w j)(a + b j) = (z a - w conj(b)) + (z b + w conj(a)) j
    const Complex a{P.re, P.i}, b{P.j, P.k};
    TwoFrame out = f;
    for (int i : I) {
        out.z[i] = f.z[i] * a - f.w[i] * std::conj(b);
        out.w[i] = f.z[i] * b + f.w[i] * std::conj(a);
    }
    return out;
}

TwoFrame right_multiply(const TwoFrame& f, const Quaternion& P) {
    std::vector<int> all(f.n());
    for (int i = 0; i < f.n(); ++i) all[i] = i;
    return right_multiply(f, P, all);
}

TwoFrame lift_bending(const TwoFrame& f, const Chord& c, double t) {
    if (c.i < 0 || c.j > f.n() || c.i >= c.j) throw Error(ErrorCode::IndexOutOfRange, "chord out of range");
    Vec3 d;
    std::vector<int> I;
    for (int m = c.i; m < c.j; ++m) {
        d += phi_quat(f.z[m], f.w[m]);
        I.push_back(m);
    }
    const double len = norm(d);
    if (len == 0) throw Error(ErrorCode::ZeroDiagonal, "cannot lift a bending along a vanishing diagonal");
    // conj(P) v P turns v by -2s about the axis, so s = -t/2 matches the downstairs flow.
    const double s = -0.5 * t;
    const Vec3 axis = std::sin(s) * d / len;
    return right_multiply(f, Quaternion{std::cos(s), axis.x, axis.y, axis.z}, I);
}

GCPattern gc_pattern(const TwoFrame& f) {
    validate_frame(f.z, f.w);
    GCPattern g;
    std::vector<int> prefix;
    for (int k = 1; k <= f.n(); ++k) {
        prefix.push_back(k - 1);
        const Eig2 e = psi_diagonal(f, prefix);
        std::vector<double> row(k, 0.0);
        row[0] = e.lambda1;
        if (k >= 2) row[1] = e.lambda2;
        g.mu.push_back(std::move(row));
    }
    return g;
}

double interlacing_violation(const GCPattern& g) {
    double worst = 0;
    for (int k = 2; k <= g.n(); ++k)
        for (int i = 1; i <= k - 1; ++i) {
            worst = std::max(worst, g.at(i, k - 1) - g.at(i, k));
            worst = std::max(worst, g.at(i + 1, k) - g.at(i, k - 1));
        }
    return worst;
}

int FiberGraph::vertex_index(int i, int k) const {
    for (std::size_t v = 0; v < vertices.size(); ++v)
        if (vertices[v].i == i && vertices[v].k == k) return static_cast<int>(v);
    return -1;
}

FiberGraph fiber_graph(const SideLengths& r, const FiberValue& c, const BendingSystem& sys, const Tolerances& tol) {
    const int n = sys.n();
    if (!(r == sys.r)) throw Error(ErrorCode::LengthMismatch, "side lengths differ from the system");
    if (sys.diags.diagonals() != caterpillar(n).diagonals())
        throw Error(ErrorCode::ContractViolation, "fiber_graph needs the caterpillar triangulation");
    const auto ell = diagonal_lengths(sys, c, tol);

    // ext[0] = r_1, ext[m] = length of the m-th diagonal, ext[n-2] = r_n, ext[n-1] = 0.
    std::vector<double> ext(n, 0.0);
    ext[0] = r[0];
    for (int m = 1; m <= n - 3; ++m) ext[m] = ell[m - 1];
    ext[n - 2] = r[n - 1];

    FiberGraph g;
    double S = 0;
    for (int k = 1; k <= n; ++k) {
        S += r[k - 1];
        g.vertices.push_back({1, k, 0.25 * (S + ext[k - 1])});
        if (k >= 2) g.vertices.push_back({2, k, 0.25 * (S - ext[k - 1])});
    }
    auto value = [&](int i, int k) { return g.vertices[g.vertex_index(i, k)].value; };
    auto link = [&](int i1, int k1, int i2, int k2) {
        if (std::fabs(value(i1, k1) - value(i2, k2)) <= tol.graph)
            g.edges.emplace_back(g.vertex_index(i1, k1), g.vertex_index(i2, k2));
    };
    for (int k = 2; k <= n; ++k)
        for (int i = 1; i <= std::min(2, k - 1); ++i) {
            link(i, k, i, k - 1);
            if (i + 1 <= 2) link(i, k - 1, i + 1, k);
        }
    // Same-level equality mu_1^k = mu_2^k means ext[k-1] = 0: the chord across diamond D_{k-1},
    // and the fixed top edge at k = n.
    for (int k = 2; k <= n; ++k) link(1, k, 2, k);

    auto has = [&](int i1, int k1, int i2, int k2) {
        const int a = g.vertex_index(i1, k1), b = g.vertex_index(i2, k2);
        for (const auto& [x, y] : g.edges)
            if ((x == a && y == b) || (x == b && y == a)) return true;
        return false;
    };
    for (int i = 1; i <= n - 3; ++i)
        g.diamonds.push_back(has(1, i + 1, 1, i) && has(1, i, 2, i + 1) && has(1, i + 1, 2, i + 2) &&
                             has(2, i + 2, 2, i + 1));
    return g;
}

std::string to_dot(const FiberGraph& g) {
    std::ostringstream out;
    out.precision(17);
    out << "graph fiber {\n  node [shape=circle];\n";
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        out << "  v" << v << " [label=\"mu_" << g.vertices[v].i << "^" << g.vertices[v].k << "\\n"
            << g.vertices[v].value << "\"];\n";
    auto in_diamond = [&](int a, int b) {
        for (std::size_t d = 0; d < g.diamonds.size(); ++d) {
            if (!g.diamonds[d]) continue;
            const int i = static_cast<int>(d) + 1;
            const int cyc[4] = {g.vertex_index(1, i + 1), g.vertex_index(1, i), g.vertex_index(2, i + 1),
                                g.vertex_index(2, i + 2)};
            for (int s = 0; s < 4; ++s) {
                const int x = cyc[s], y = cyc[(s + 1) % 4];
                if ((x == a && y == b) || (x == b && y == a)) return static_cast<int>(d) + 1;
            }
        }
        return 0;
    };
    for (const auto& [a, b] : g.edges) {
        out << "  v" << a << " -- v" << b;
        if (const int d = in_diamond(a, b)) out << " [color=red, penwidth=2, label=\"D" << d << "\"]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace polybend
