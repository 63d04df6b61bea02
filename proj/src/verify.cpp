#include "polybend/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "polybend/errors.hpp"
#include "polybend/parallel.hpp"

namespace polybend {

const char* version() { return POLYBEND_VERSION; }

json to_json(const RunConfig& cfg) {
    return {{"seed", cfg.seed},
            {"n", cfg.n},
            {"samples", cfg.samples},
            {"grid", cfg.grid},
            {"tolerances", to_json(cfg.tol)},
            {"threads", worker_count()}};
}

void CheckResult::add(double residual, const std::string& locator) {
    ++evaluated;
    max_residual = std::max(max_residual, residual);
    if (!(residual < threshold)) {
        if (failures == 0) first_failure = locator;
        ++failures;
    }
}

void CheckResult::add_flag(bool ok, const std::string& locator, double residual) {
    ++evaluated;
    max_residual = std::max(max_residual, residual);
    if (!ok) {
        if (failures == 0) first_failure = locator;
        ++failures;
    }
}

bool SuiteReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass(); });
}

json SuiteReport::to_json() const {
    json cs = json::array();
    for (const auto& c : checks) {
        json j = {{"name", c.name},
                  {"pass", c.pass()},
                  {"max_residual", c.max_residual},
                  {"threshold", c.threshold},
                  {"evaluated", c.evaluated},
                  {"failures", c.failures}};
        if (!c.first_failure.empty()) j["first_failure"] = c.first_failure;
        cs.push_back(j);
    }
    return {{"suite", suite},         {"pass", pass()},  {"version", version()},
            {"config", polybend::to_json(config)}, {"checks", cs}, {"details", details}};
}

Polygon random_polygon(int n, Rng& rng) {
    std::vector<Vec3> v(n);
    Vec3 mean;
    for (auto& x : v) {
        x = {gaussian(rng), gaussian(rng), gaussian(rng)};
        mean += x;
    }
    mean = mean / n;
    std::vector<double> r(n);
    std::vector<Vec3> u(n);
    for (int i = 0; i < n; ++i) {
        const Vec3 e = v[i] - mean;
        r[i] = norm(e);
        u[i] = e / r[i];
    }
    return Polygon{SideLengths(r), u};
}

std::vector<std::vector<double>> grid_side_lengths(int n) {
    switch (n) {
        case 4: return {{1, 1, 1, 1}, {1, 2, 2, 1}, {2, 1, 2, 3}};
        case 5: return {{1, 1, 1, 1, 1}, {1, 1, 1, 1, 2}, {1, 2, 1, 2, 2}};
        case 6: return {{1, 1, 1, 1, 1, 1}, {1, 1, 2, 1, 1, 2}};
        default: return {std::vector<double>(n, 1.0)};
    }
}

std::vector<FiberValue> fiber_grid(const BendingSystem& sys, int points, const Tolerances& tol) {
    const int n = sys.n();
    const auto& r = sys.r;
    bool integral = true;
    for (int i = 0; i < n; ++i) integral = integral && r[i] == std::round(r[i]);
    std::vector<std::vector<double>> axes;
    for (const Chord& d : sys.diags.diagonals()) {
        double inside = 0, total = r.perimeter();
        for (int m = d.i; m < d.j; ++m) inside += r[m];
        const double bound = std::min(inside, total - inside);
        std::vector<double> a;
        for (int s = 0; s < points; ++s) a.push_back(bound * s / (points - 1));
        if (integral)
            for (double x = 0; x <= bound; x += 0.5) a.push_back(x);
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end(), [](double x, double y) { return std::fabs(x - y) < 1e-12; }),
                a.end());
        axes.push_back(a);
    }
    std::vector<FiberValue> out;
    std::vector<std::size_t> idx(axes.size(), 0);
    while (true) {
        std::vector<double> ell(axes.size());
        for (std::size_t k = 0; k < axes.size(); ++k) ell[k] = axes[k][idx[k]];
        try {
            require_feasible(sys, ell, tol);
            FiberValue c;
            for (double l : ell) c.c.push_back(0.5 * l * l);
            out.push_back(c);
        } catch (const Error&) {
        }
        std::size_t k = 0;
        while (k < axes.size() && ++idx[k] == axes[k].size()) idx[k++] = 0;
        if (k == axes.size()) break;
    }
    return out;
}

namespace {

double sigma_max(const std::vector<TangentVector>& fields) {
    // Frobenius norm bounds the top singular value within a factor sqrt(m); fine for a cutoff scale.
    double s = 0;
    for (const auto& f : fields)
        for (const Vec3& v : f.X) s += dot(v, v);
    return std::sqrt(s);
}

}  // namespace

FiberCheck check_fiber(const BendingSystem& sys, const FiberValue& c, int samples, std::uint64_t seed,
                       const Tolerances& tol) {
    FiberCheck fc;
    fc.model = classify_fiber(sys, c, tol);
    const int n = sys.n();
    const int m = sys.diags.size();
    const auto polys = sample_fiber(sys, c, samples, seed, tol);
    const auto pieces = wedge_pieces(sys, c, tol);
    const double floor = 1e-14 * sys.r.perimeter();
    for (const Polygon& u : polys) {
        const auto F = momentum_F(sys, u);
        for (int k = 0; k < m; ++k) fc.max_momentum_error = std::max(fc.max_momentum_error, std::fabs(F.c[k] - c.c[k]));
        auto gens = tangent_generators(sys, u, c, tol);
        fc.generator_rank.push_back(numerical_rank(gens, tol.rank));

        std::vector<TangentVector> raw(gens.begin(), gens.begin() + m), hor;
        for (int k = 0; k < m; ++k) hor.push_back(horizontal_project(u, gens[k]));
        fc.horizontal_rank.push_back(numerical_rank(hor, tol.rank, std::max(sigma_max(raw), sys.r.perimeter())));

        int best = 0;
        for (std::size_t p = 0; p < pieces.size(); ++p) {
            std::vector<TangentVector> rot(gens.begin() + m + 3 * p, gens.begin() + m + 3 * p + 3);
            best = std::max(best, numerical_rank(rot, tol.rank));
        }
        fc.piece_rotation_rank_max.push_back(best);

        std::vector<TangentVector> unit;
        for (auto& g : gens) {
            const double len = std::sqrt(metric(u, g, g));
            if (len <= floor) continue;
            for (auto& v : g.X) v = v / len;
            unit.push_back(std::move(g));
        }
        for (std::size_t a = 0; a < unit.size(); ++a)
            for (std::size_t b = a + 1; b < unit.size(); ++b)
                fc.max_omega = std::max(fc.max_omega, std::fabs(omega_unchecked(u, unit[a], unit[b])));
    }
    if (!polys.empty()) {
        // Type I iff some wedge piece carries a free SO(3) orbit (rotation rank 3).
        fc.rank_type_I = fc.piece_rotation_rank_max[0] == 3;
        fc.rank_lagrangian = fc.rank_type_I && fc.generator_rank[0] - 3 == n - 3;
    }
    return fc;
}

namespace {

std::vector<int> sizes(const RunConfig& cfg, std::vector<int> defaults) {
    if (cfg.n > 0) return {cfg.n};
    return defaults;
}

int samples_or(const RunConfig& cfg, int fallback) { return cfg.samples > 0 ? cfg.samples : fallback; }

std::uint64_t item_id(int n, int a, long b) {
    return static_cast<std::uint64_t>(n) * 1000000000000ULL + static_cast<std::uint64_t>(a) * 10000000ULL +
           static_cast<std::uint64_t>(b);
}

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string where(std::uint64_t seed, int n, const std::string& rest) {
    std::ostringstream s;
    s << "seed=" << seed << " n=" << n << " " << rest;
    return s.str();
}

double wrap(double x) { return std::remainder(x, 2 * M_PI); }

double max_edge_diff(const Polygon& a, const Polygon& b) {
    double m = 0;
    for (int i = 0; i < a.n(); ++i) m = std::max(m, norm(a.u[i] - b.u[i]));
    return m;
}

long catalan(int m) {
    long c = 1;
    for (int i = 0; i < m; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

}  // namespace

SuiteReport verify_poisson(const RunConfig& cfg) {
    SuiteReport rep{"poisson", cfg, {}, json::object()};
    CheckResult counts{"triangulation count equals Catalan(n-2)", 0, 1, 0, 0, ""};
    CheckResult bracket{"max |omega(X_k, X_m)| over diagonal pairs", 0, cfg.tol.symplectic, 0, 0, ""};
    const int samples = samples_or(cfg, 1000);
    json per_n = json::object();
    for (int n : sizes(cfg, {4, 5, 6, 7, 8})) {
        const auto tris = enumerate_triangulations(n);
        counts.add_flag(static_cast<long>(tris.size()) == catalan(n - 2), where(cfg.seed, n, "count"));
        const std::size_t items = tris.size() * samples;
        std::vector<double> worst(items, 0.0);
        parallel_for(items, [&](std::size_t it) {
            const int t = static_cast<int>(it / samples);
            const long s = static_cast<long>(it % samples);
            Rng rng = item_rng(cfg.seed, item_id(n, t, s));
            const Polygon u = random_polygon(n, rng);
            const BendingSystem sys(u.r, tris[t]);
            double w = 0;
            for (int k = 0; k < sys.diags.size(); ++k)
                for (int m = k + 1; m < sys.diags.size(); ++m)
                    w = std::max(w, std::fabs(poisson_bracket(sys, u, k, m)));
            worst[it] = w;
        });
        double nmax = 0;
        for (std::size_t it = 0; it < items; ++it) {
            const int t = static_cast<int>(it / samples);
            bracket.add(worst[it], where(cfg.seed, n, "triangulation=" + std::to_string(t) +
                                                          " sample=" + std::to_string(it % samples)));
            nmax = std::max(nmax, worst[it]);
        }
        per_n[std::to_string(n)] = {{"triangulations", tris.size()}, {"max_abs_omega", nmax}};
    }
    rep.checks = {counts, bracket};
    rep.details = per_n;
    return rep;
}

SuiteReport verify_flow(const RunConfig& cfg) {
    SuiteReport rep{"flow", cfg, {}, json::object()};
    CheckResult drift{"F drift over composed flows of total angle 100 pi", 0, 1e-10, 0, 0, ""};
    CheckResult closing{"closing defect along the composed flows", 0, 1e-12, 0, 0, ""};
    CheckResult period{"normalized flow periodicity |phi^(2 pi)(u) - u|", 0, 1e-10, 0, 0, ""};
    CheckResult group{"group law flow(flow(u,s),t) = flow(u,s+t)", 0, 1e-10, 0, 0, ""};
    const int samples = samples_or(cfg, 200);
    for (int n : sizes(cfg, {4, 5, 6, 7, 8})) {
        const auto tris = enumerate_triangulations(n);
        struct Item {
            double drift = 0, closing = 0, period = 0, group = 0;
        };
        std::vector<Item> res(samples);
        parallel_for(samples, [&](std::size_t s) {
            Rng rng = item_rng(cfg.seed, item_id(n, 0, static_cast<long>(s)));
            const Polygon u0 = random_polygon(n, rng);
            const auto& tri = tris[static_cast<std::size_t>(uniform01(rng) * tris.size()) % tris.size()];
            const BendingSystem sys(u0.r, tri);
            const int m = sys.diags.size();
            const auto F0 = momentum_F(sys, u0);
            Item item;

            const int steps = 50;
            std::vector<double> w(steps);
            for (double& x : w) x = uniform(rng, 0.1, 1.0);
            const double total = std::accumulate(w.begin(), w.end(), 0.0);
            Polygon u = u0;
            for (int st = 0; st < steps; ++st) {
                const int k = static_cast<int>(uniform01(rng) * m) % m;
                u = flow(sys, u, k, 100 * M_PI * w[st] / total, true);
                const auto F = momentum_F(sys, u);
                for (int j = 0; j < m; ++j)
                    item.drift = std::max(item.drift, std::fabs(F.c[j] - F0.c[j]) / std::max(1.0, F0.c[j]));
                item.closing = std::max(item.closing, closing_defect(u));
            }
            for (int k = 0; k < m; ++k) {
                item.period = std::max(item.period, max_edge_diff(flow(sys, u0, k, 2 * M_PI, true), u0));
                const double a = uniform(rng, -3, 3), b = uniform(rng, -3, 3);
                for (bool normalized : {true, false}) {
                    const Polygon two = flow(sys, flow(sys, u0, k, a, normalized), k, b, normalized);
                    item.group = std::max(item.group, max_edge_diff(two, flow(sys, u0, k, a + b, normalized)));
                }
            }
            res[s] = item;
        });
        for (int s = 0; s < samples; ++s) {
            const auto loc = where(cfg.seed, n, "sample=" + std::to_string(s));
            drift.add(res[s].drift, loc);
            closing.add(res[s].closing, loc);
            period.add(res[s].period, loc);
            group.add(res[s].group, loc);
        }
    }
    rep.checks = {drift, closing, period, group};
    return rep;
}

SuiteReport verify_action_angle(const RunConfig& cfg) {
    SuiteReport rep{"action_angle", cfg, {}, json::object()};
    CheckResult rate{"theta_k advances at unit rate under the normalized flow", 0, 1e-8, 0, 0, ""};
    CheckResult others{"theta_p (p != k) fixed under the flow of k", 0, 1e-8, 0, 0, ""};
    CheckResult lengths{"diagonal lengths fixed under every flow", 0, 1e-8, 0, 0, ""};
    CheckResult ell{"ell = sqrt(2 F)", 0, 1e-12, 0, 0, ""};
    CheckResult round{"build_polygon then action_angle returns theta", 0, 1e-8, 0, 0, ""};
    CheckResult fiber{"build_polygon lands on the fiber", 0, 1e-10, 0, 0, ""};
    const int samples = samples_or(cfg, 100);
    for (int n : sizes(cfg, {4, 5, 6, 7, 8})) {
        const auto tris = enumerate_triangulations(n);
        struct Item {
            double rate = 0, others = 0, lengths = 0, ell = 0, round = 0, fiber = 0;
        };
        std::vector<Item> res(samples);
        parallel_for(samples, [&](std::size_t s) {
            Rng rng = item_rng(cfg.seed, item_id(n, 1, static_cast<long>(s)));
            const Polygon u0 = random_polygon(n, rng);
            const auto& tri = tris[static_cast<std::size_t>(uniform01(rng) * tris.size()) % tris.size()];
            const BendingSystem sys(u0.r, tri);
            const int m = sys.diags.size();
            const auto a0 = action_angle(sys, u0);
            const auto F0 = momentum_F(sys, u0);
            Item item;
            for (int k = 0; k < m; ++k) {
                item.ell = std::max(item.ell, std::fabs(a0.length[k] - std::sqrt(2 * F0.c[k])));
                for (int step = 1; step <= 8; ++step) {
                    const double t = 2 * M_PI * step / 8.0 - (step == 8 ? 1e-3 : 0.0);
                    const auto at = action_angle(sys, flow(sys, u0, k, t, true));
                    for (int p = 0; p < m; ++p) {
                        const double dtheta = wrap(at.angle[p] - a0.angle[p] - (p == k ? t : 0.0));
                        (p == k ? item.rate : item.others) = std::max(p == k ? item.rate : item.others, std::fabs(dtheta));
                        item.lengths = std::max(item.lengths, std::fabs(at.length[p] - a0.length[p]));
                    }
                }
            }
            std::vector<double> theta(m);
            for (double& t : theta) t = uniform(rng, 0, 2 * M_PI);
            const Polygon b = build_polygon(sys, F0, theta);
            const auto ab = action_angle(sys, b);
            const auto Fb = momentum_F(sys, b);
            for (int k = 0; k < m; ++k) {
                item.round = std::max(item.round, std::fabs(wrap(ab.angle[k] - theta[k])));
                item.fiber = std::max(item.fiber, std::fabs(Fb.c[k] - F0.c[k]) / std::max(1.0, F0.c[k]));
            }
            res[s] = item;
        });
        for (int s = 0; s < samples; ++s) {
            const auto loc = where(cfg.seed, n, "sample=" + std::to_string(s));
            rate.add(res[s].rate, loc);
            others.add(res[s].others, loc);
            lengths.add(res[s].lengths, loc);
            ell.add(res[s].ell, loc);
            round.add(res[s].round, loc);
            fiber.add(res[s].fiber, loc);
        }
    }
    rep.checks = {rate, others, lengths, ell, round, fiber};
    return rep;
}

SuiteReport verify_isotropy(const RunConfig& cfg) {
    SuiteReport rep{"isotropy", cfg, {}, json::object()};
    CheckResult singular{"is_singular_fiber agrees with horizontal bending rank < n-3", 0, 1, 0, 0, ""};
    CheckResult structure{"SVD rank of tangent generators equals dim_total", 0, 1, 0, 0, ""};
    CheckResult isotropic{"normalized |omega| on generator pairs", 0, cfg.tol.isotropy, 0, 0, ""};
    CheckResult lagrangian{"lagrangian flag equals the rank-data recomputation", 0, 1, 0, 0, ""};
    CheckResult piecewise{"type I lagrangian iff every piece is a digon, rigid triangle or regular", 0, 1, 0, 0, ""};
    CheckResult momentum{"sampled polygons lie on the fiber", 0, 1e-10, 0, 0, ""};
    const int samples = samples_or(cfg, 20);

    struct Item {
        int n, ri, t;
        BendingSystem sys;
        FiberValue c;
    };
    std::vector<Item> items;
    for (int n : sizes(cfg, {4, 5})) {
        const auto tris = enumerate_triangulations(n);
        const auto rs = grid_side_lengths(n);
        for (int ri = 0; ri < static_cast<int>(rs.size()); ++ri)
            for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
                BendingSystem sys(SideLengths(rs[ri]), tris[t]);
                for (const auto& c : fiber_grid(sys, cfg.grid, cfg.tol)) items.push_back({n, ri, t, sys, c});
            }
    }
    std::vector<FiberCheck> res(items.size());
    parallel_for(items.size(), [&](std::size_t i) {
        res[i] = check_fiber(items[i].sys, items[i].c, samples, mix(cfg.seed ^ i), cfg.tol);
    });
    long singular_fibers = 0, boundary = 0;
    std::map<std::string, int> kinds;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto& it = items[i];
        const auto& fc = res[i];
        const int n = it.n;
        std::ostringstream loc;
        loc << "seed=" << cfg.seed << " item=" << i << " n=" << n << " r#" << it.ri << " triangulation=" << it.t
            << " c=" << polybend::to_json(it.c).dump();
        const bool sing = fc.model.singular;
        singular_fibers += sing;
        boundary += fc.model.boundary_case;
        bool agree = true, ranks_ok = true;
        for (std::size_t s = 0; s < fc.horizontal_rank.size(); ++s) {
            agree = agree && ((fc.horizontal_rank[s] < n - 3) == sing);
            ranks_ok = ranks_ok && fc.generator_rank[s] == fc.model.dim_total;
        }
        if (!fc.model.boundary_case) {
            singular.add_flag(agree, loc.str());
            structure.add_flag(ranks_ok, loc.str());
        }
        isotropic.add(fc.max_omega, loc.str());
        lagrangian.add_flag(fc.rank_lagrangian == fc.model.lagrangian &&
                                fc.rank_type_I == (fc.model.type == FiberType::I),
                            loc.str());
        if (fc.model.type == FiberType::I) {
            const bool all_ok = std::all_of(fc.model.pieces.begin(), fc.model.pieces.end(),
                                            [](const PieceModel& p) { return p.lagrangian_piece; });
            piecewise.add_flag(all_ok == fc.model.lagrangian, loc.str());
        }
        momentum.add(fc.max_momentum_error, loc.str());
        std::ostringstream key;
        key << "p" << fc.model.p << "q" << fc.model.q << "k" << fc.model.k << (fc.model.lagrangian ? "L" : "");
        ++kinds[key.str()];
    }
    rep.checks = {singular, structure, isotropic, lagrangian, piecewise, momentum};
    rep.details = {{"fibers", items.size()},
                   {"singular_fibers", singular_fibers},
                   {"boundary_cases", boundary},
                   {"models", kinds}};
    return rep;
}

SuiteReport verify_grassmann(const RunConfig& cfg) {
    SuiteReport rep{"grassmann", cfg, {}, json::object()};
    CheckResult relation{"4 psi_d + |sum q| - sum r (caterpillar and snake)", 0, 1e-10, 0, 0, ""};
    CheckResult perimeter{"perimeter equals 2", 0, 1e-12, 0, 0, ""};
    CheckResult closing{"edges of the image polygon sum to zero", 0, 1e-12, 0, 0, ""};
    CheckResult sides{"psi_side = r_i / 2", 0, 1e-12, 0, 0, ""};
    CheckResult trace{"lambda1 + lambda2 = half the block norm", 0, 1e-12, 0, 0, ""};
    CheckResult equivariance{"right quaternion action rotates the image polygon", 0, 1e-10, 0, 0, ""};
    CheckResult lifted{"lifted bending matches the downstairs flow and keeps psi", 0, 1e-10, 0, 0, ""};
    const int samples = samples_or(cfg, 1000);
    for (int n : sizes(cfg, {4, 5, 6, 7, 8})) {
        const DiagonalSet cat = caterpillar(n), snk = snake(n);
        struct Item {
            double relation = 0, perimeter = 0, closing = 0, sides = 0, trace = 0, equiv = 0, lifted = 0;
        };
        std::vector<Item> res(samples);
        parallel_for(samples, [&](std::size_t s) {
            Rng rng = item_rng(cfg.seed, item_id(n, 2, static_cast<long>(s)));
            const TwoFrame f = random_frame(n, rng);
            const auto poly = frame_to_polygon(f);
            Item item;
            for (const auto* ds : {&cat, &snk})
                for (double x : check_relation(f, *ds)) item.relation = std::max(item.relation, x);
            Vec3 sum;
            double per = 0;
            for (int i = 0; i < n; ++i) {
                sum += poly.edges[i];
                per += poly.r[i];
                item.sides = std::max(item.sides, std::fabs(psi_side(f, i) - 0.5 * norm(poly.edges[i])));
            }
            item.perimeter = std::fabs(per - 2);
            item.closing = norm(sum);
            for (const auto* ds : {&cat, &snk})
                for (const Chord& d : ds->diagonals()) {
                    std::vector<int> I;
                    double half = 0;
                    for (int m = d.i; m < d.j; ++m) {
                        I.push_back(m);
                        half += psi_side(f, m);
                    }
                    const Eig2 e = psi_diagonal(f, I);
                    item.trace = std::max(item.trace, std::fabs(e.lambda1 + e.lambda2 - half));
                }
            const Quaternion P = random_rotation(rng).quaternion();
            const Polygon a = align_canonical(poly.polygon());
            const Polygon b = align_canonical(frame_to_polygon(right_multiply(f, P)).polygon());
            item.equiv = max_edge_diff(a, b);

            const Chord c = cat[static_cast<int>(uniform01(rng) * cat.size()) % cat.size()];
            const double t = uniform(rng, -M_PI, M_PI);
            const TwoFrame g = lift_bending(f, c, t);
            const Polygon up = frame_to_polygon(g).polygon();
            const Polygon down = chord_flow(poly.polygon(), c, t, true);
            double dev = max_edge_diff(up, down);
            for (int i = 0; i < n; ++i) dev = std::max(dev, std::fabs(psi_side(g, i) - psi_side(f, i)));
            for (const Chord& d : cat.diagonals()) {
                std::vector<int> I;
                for (int m = d.i; m < d.j; ++m) I.push_back(m);
                dev = std::max(dev, std::fabs(psi_diagonal(g, I).lambda2 - psi_diagonal(f, I).lambda2));
            }
            item.lifted = dev;
            res[s] = item;
        });
        for (int s = 0; s < samples; ++s) {
            const auto loc = where(cfg.seed, n, "frame=" + std::to_string(s));
            relation.add(res[s].relation, loc);
            perimeter.add(res[s].perimeter, loc);
            closing.add(res[s].closing, loc);
            sides.add(res[s].sides, loc);
            trace.add(res[s].trace, loc);
            equivariance.add(res[s].equiv, loc);
            lifted.add(res[s].lifted, loc);
        }
    }
    rep.checks = {relation, perimeter, closing, sides, trace, equivariance, lifted};
    return rep;
}

SuiteReport verify_gc(const RunConfig& cfg) {
    SuiteReport rep{"gc", cfg, {}, json::object()};
    CheckResult interlace{"Gel'fand-Cetlin interlacing", 0, 1e-10, 0, 0, ""};
    CheckResult top{"mu_1^n = mu_2^n = 1/2", 0, 1e-10, 0, 0, ""};
    CheckResult ladder{"mu_2^k = sum psi_q - mu_1^k and mu_1^1 = psi_q1", 0, 1e-10, 0, 0, ""};
    CheckResult closed{"4 mu_i^k = S_k +- |d_(k-1)| from the image polygon", 0, 1e-10, 0, 0, ""};
    CheckResult monotone{"lambda_1 nondecreasing in k", 0, 1e-10, 0, 0, ""};
    CheckResult diamonds{"diamond flags equal the vanishing-diagonal set", 0, 1, 0, 0, ""};
    const int samples = samples_or(cfg, 1000);
    for (int n : sizes(cfg, {4, 5, 6, 7, 8})) {
        struct Item {
            double interlace = 0, top = 0, ladder = 0, closed = 0, monotone = 0;
        };
        std::vector<Item> res(samples);
        parallel_for(samples, [&](std::size_t s) {
            Rng rng = item_rng(cfg.seed, item_id(n, 2, static_cast<long>(s)));
            const TwoFrame f = random_frame(n, rng);
            const auto g = gc_pattern(f);
            const auto poly = frame_to_polygon(f);
            Item item;
            item.interlace = interlacing_violation(g);
            item.top = std::max(std::fabs(g.at(1, n) - 0.5), std::fabs(g.at(2, n) - 0.5));
            double S = 0, psum = 0;
            Vec3 prefix;
            for (int k = 1; k <= n; ++k) {
                S += poly.r[k - 1];
                psum += psi_side(f, k - 1);
                prefix += poly.edges[k - 1];
                if (k == 1) {
                    item.ladder = std::max(item.ladder, std::fabs(g.at(1, 1) - psi_side(f, 0)));
                } else {
                    item.ladder = std::max(item.ladder, std::fabs(g.at(2, k) - (psum - g.at(1, k))));
                    item.monotone = std::max(item.monotone, g.at(1, k - 1) - g.at(1, k));
                }
                // |d_{k-1}| is the length of the first k edges' sum (the k-th vertex chord).
                const double len = norm(prefix);
                item.closed = std::max(item.closed, std::fabs(4 * g.at(1, k) - (S + len)));
                if (k >= 2) item.closed = std::max(item.closed, std::fabs(4 * g.at(2, k) - (S - len)));
            }
            res[s] = item;
        });
        for (int s = 0; s < samples; ++s) {
            const auto loc = where(cfg.seed, n, "frame=" + std::to_string(s));
            interlace.add(res[s].interlace, loc);
            top.add(res[s].top, loc);
            ladder.add(res[s].ladder, loc);
            closed.add(res[s].closed, loc);
            monotone.add(res[s].monotone, loc);
        }
    }
    long graphs = 0;
    for (int n : sizes(cfg, {4, 5, 6})) {
        for (const auto& r : grid_side_lengths(n)) {
            const BendingSystem sys(SideLengths(r), caterpillar(n));
            for (const auto& c : fiber_grid(sys, cfg.grid, cfg.tol)) {
                const auto g = fiber_graph(sys.r, c, sys, cfg.tol);
                const auto model = classify_fiber(sys, c, cfg.tol);
                std::vector<int> flagged;
                for (int i = 0; i < static_cast<int>(g.diamonds.size()); ++i)
                    if (g.diamonds[i]) flagged.push_back(i);
                diamonds.add_flag(flagged == model.vanishing,
                                  where(cfg.seed, n, "r=" + json(r).dump() + " c=" + polybend::to_json(c).dump()));
                ++graphs;
            }
        }
    }
    rep.checks = {interlace, top, ladder, closed, monotone, diamonds};
    rep.details = {{"fiber_graphs", graphs}};
    return rep;
}

}  // namespace polybend
