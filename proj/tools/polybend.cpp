#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "polybend/errors.hpp"
#include "polybend/verify.hpp"

using namespace polybend;

namespace {

constexpr int kOk = 0;
constexpr int kAssertion = 1;
constexpr int kInfeasible = 2;
constexpr int kUsage = 64;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_csv(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError(std::string("bad number in ") + what + ": '" + tok + "'");
        }
    }
    return out;
}

// "0-2,0-3": comma separated i-j pairs.
DiagonalSet parse_diagonals(const std::string& s, int n) {
    std::vector<Chord> d;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto dash = tok.find('-');
        if (dash == std::string::npos) throw UsageError("diagonal '" + tok + "' is not of the form i-j");
        try {
            d.push_back({std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1))});
        } catch (const std::exception&) {
            throw UsageError("diagonal '" + tok + "' is not of the form i-j");
        }
    }
    return validate_diagonals(n, d);
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::SchemaViolation, path + ": " + e.what());
    }
}

void emit(const std::string& text, const std::string& out) {
    const char* end = !text.empty() && text.back() == '\n' ? "" : "\n";
    if (out.empty()) {
        std::cout << text << end;
        return;
    }
    std::ofstream f(out);
    if (!f) throw UsageError("cannot write " + out);
    f << text << end;
}

struct SystemArgs {
    std::string r;
    std::string diagonals;
    bool caterpillar = false;
    bool snake = false;

    void attach(CLI::App* app, bool need_r = true) {
        auto* o = app->add_option("--r", r, "side lengths, comma separated");
        if (need_r) o->required();
        app->add_option("--diagonals", diagonals, "diagonals as i-j pairs, e.g. 0-2,0-3");
        app->add_flag("--caterpillar", caterpillar, "fan of diagonals from vertex 0");
        app->add_flag("--snake", snake, "zigzag triangulation");
    }

    DiagonalSet diags(int n) const {
        if (n < 4) throw UsageError("n >= 4 required, got n = " + std::to_string(n));
        const int chosen = caterpillar + snake + !diagonals.empty();
        if (chosen > 1) throw UsageError("choose one of --diagonals, --caterpillar, --snake");
        if (snake) return polybend::snake(n);
        if (!diagonals.empty()) return parse_diagonals(diagonals, n);
        return polybend::caterpillar(n);
    }

    BendingSystem system() const {
        const auto rv = parse_csv(r, "--r");
        if (rv.size() < 4) throw UsageError("n >= 4 required, got n = " + std::to_string(rv.size()));
        return BendingSystem(SideLengths(rv), diags(static_cast<int>(rv.size())));
    }
};

FiberValue parse_c(const std::string& s, const BendingSystem& sys) {
    FiberValue c{parse_csv(s, "--c")};
    if (static_cast<int>(c.c.size()) != sys.diags.size())
        throw UsageError("--c needs " + std::to_string(sys.diags.size()) + " values, got " +
                         std::to_string(c.c.size()));
    return c;
}

void apply_tol(Tolerances& t, const std::vector<std::string>& kv) {
    for (const auto& s : kv) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw UsageError("--tol expects name=value, got '" + s + "'");
        const std::string key = s.substr(0, eq);
        const double v = parse_csv(s.substr(eq + 1), "--tol").at(0);
        double* slot = key == "kernel"        ? &t.kernel
                       : key == "symplectic"  ? &t.symplectic
                       : key == "unit_repair" ? &t.unit_repair
                       : key == "closing"     ? &t.closing
                       : key == "tangency"    ? &t.tangency
                       : key == "collinear"   ? &t.collinear
                       : key == "equality"    ? &t.equality
                       : key == "rank"        ? &t.rank
                       : key == "isotropy"    ? &t.isotropy
                       : key == "graph"       ? &t.graph
                                              : nullptr;
        if (!slot) throw UsageError("unknown tolerance '" + key + "'");
        *slot = v;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bending flows on polygon spaces: classify, flow, sample and verify."};
    app.set_version_flag("--version", version());
    app.require_subcommand(1);
    app.fallthrough();

    std::string out;
    std::vector<std::string> tol_overrides;
    app.add_option("--tol", tol_overrides, "tolerance override name=value (repeatable)")->take_all();

    // classify
    SystemArgs cls_sys;
    std::string cls_c;
    bool cls_faces = false;
    auto* cls = app.add_subcommand("classify", "classify the fiber over c");
    cls_sys.attach(cls);
    cls->add_option("--c", cls_c, "fiber value F = |d|^2 / 2 per diagonal")->required();
    cls->add_flag("--faces", cls_faces, "include per-face status");

    // verify
    std::string suite;
    RunConfig cfg;
    auto* ver = app.add_subcommand("verify", "run a property suite");
    ver->add_option("suite", suite, "poisson | flow | action-angle | isotropy | grassmann | gc")
        ->required()
        ->check(CLI::IsMember({"poisson", "flow", "action-angle", "isotropy", "grassmann", "gc"}));
    ver->add_option("--n", cfg.n, "polygon size (default: the suite's range)")->check(CLI::Range(4, 30));
    ver->add_option("--samples", cfg.samples, "samples per item (default per suite)")->check(CLI::PositiveNumber);
    ver->add_option("--seed", cfg.seed, "RNG seed");
    ver->add_option("--grid", cfg.grid, "points per fiber-grid axis")->check(CLI::Range(2, 1000));
    ver->add_option("--out", out, "write the report here instead of stdout");

    // flow
    std::string flow_in;
    SystemArgs flow_sys;
    int flow_k = 0;
    double flow_t = 0;
    bool flow_norm = false;
    auto* flw = app.add_subcommand("flow", "apply a bending flow to a polygon");
    flw->add_option("--in", flow_in, "polygon JSON {\"r\": [...], \"u\": [[x,y,z], ...]}")->required();
    flow_sys.attach(flw, false);
    flw->add_option("--k", flow_k, "diagonal index (0-based)")->required();
    flw->add_option("--t", flow_t, "flow time")->required();
    flw->add_flag("--normalized", flow_norm, "unit angular speed");
    flw->add_option("--out", out, "output file");

    // sample
    SystemArgs smp_sys;
    std::string smp_c;
    int smp_count = 1;
    std::uint64_t smp_seed = 0;
    auto* smp = app.add_subcommand("sample", "sample polygons on a fiber");
    smp_sys.attach(smp);
    smp->add_option("--c", smp_c, "fiber value per diagonal")->required();
    smp->add_option("--count", smp_count, "number of polygons")->check(CLI::PositiveNumber);
    smp->add_option("--seed", smp_seed, "RNG seed");
    smp->add_option("--out", out, "output file");

    // gc
    std::string gc_r, gc_c, gc_frame;
    bool gc_dot = false;
    auto* gcc = app.add_subcommand("gc", "Gel'fand-Cetlin data: fiber graph or a frame's pattern");
    gcc->add_option("--r", gc_r, "side lengths");
    gcc->add_option("--c", gc_c, "caterpillar fiber value");
    gcc->add_option("--frame", gc_frame, "frame JSON {\"n\":..,\"z\":[[re,im],..],\"w\":[..]}");
    gcc->add_flag("--dot", gc_dot, "emit the fiber graph as DOT");
    gcc->add_option("--out", out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        Tolerances tol = default_tolerances();
        apply_tol(tol, tol_overrides);

        if (*cls) {
            const auto sys = cls_sys.system();
            const auto c = parse_c(cls_c, sys);
            json j = to_json(classify_fiber(sys, c, tol));
            if (cls_faces) {
                json fs = json::array();
                for (const auto& s : face_statuses(sys, c, tol)) fs.push_back(to_json(s));
                j["faces"] = fs;
            }
            emit(j.dump(), out);
            return kOk;
        }

        if (*ver) {
            cfg.tol = tol;
            const auto start = std::chrono::steady_clock::now();
            SuiteReport rep = suite == "poisson"        ? verify_poisson(cfg)
                              : suite == "flow"         ? verify_flow(cfg)
                              : suite == "action-angle" ? verify_action_angle(cfg)
                              : suite == "isotropy"     ? verify_isotropy(cfg)
                              : suite == "grassmann"    ? verify_grassmann(cfg)
                                                        : verify_gc(cfg);
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            emit(rep.to_json().dump(2), out);
            // Wall time stays off stdout so reports are byte-identical across runs.
            std::fprintf(stderr, "%s %s in %.2f s\n", suite.c_str(), rep.pass() ? "PASS" : "FAIL", secs);
            for (const auto& c : rep.checks)
                if (!c.pass())
                    std::fprintf(stderr, "  failed: %s (%ld of %ld), first at %s\n", c.name.c_str(), c.failures,
                                 c.evaluated, c.first_failure.c_str());
            return rep.pass() ? kOk : kAssertion;
        }

        if (*flw) {
            const Polygon u = polygon_from_json(read_json(flow_in), tol);
            const BendingSystem sys(u.r, flow_sys.diags(u.n()));
            if (flow_k < 0 || flow_k >= sys.diags.size())
                throw UsageError("--k must lie in [0, " + std::to_string(sys.diags.size()) + ")");
            emit(to_json(flow(sys, u, flow_k, flow_t, flow_norm, tol)).dump(), out);
            return kOk;
        }

        if (*smp) {
            const auto sys = smp_sys.system();
            const auto c = parse_c(smp_c, sys);
            const auto polys = sample_fiber(sys, c, smp_count, smp_seed, tol);
            json ps = json::array(), cs = json::array();
            double err = 0;
            for (const auto& u : polys) {
                ps.push_back(to_json(u));
                const auto F = momentum_F(sys, u);
                for (int k = 0; k < sys.diags.size(); ++k) err = std::max(err, std::fabs(F.c[k] - c.c[k]));
                cs.push_back(to_json(F));
            }
            json j = {{"version", version()},
                      {"seed", smp_seed},
                      {"diagonals", to_json(sys.diags)},
                      {"c", to_json(c)},
                      {"polygons", ps},
                      {"remeasured", cs},
                      {"max_c_error", err}};
            emit(j.dump(), out);
            return kOk;
        }

        if (*gcc) {
            if (!gc_frame.empty()) {
                if (gc_dot) throw UsageError("--dot needs --r and --c, not --frame");
                const TwoFrame f = frame_from_json(read_json(gc_frame));
                json j = {{"pattern", to_json(gc_pattern(f))},
                          {"polygon", to_json(frame_to_polygon(f).polygon())},
                          {"interlacing_violation", interlacing_violation(gc_pattern(f))}};
                emit(j.dump(), out);
                return kOk;
            }
            if (gc_r.empty() || gc_c.empty()) throw UsageError("gc needs --frame, or --r with --c");
            SystemArgs sa;
            sa.r = gc_r;
            sa.caterpillar = true;
            const auto sys = sa.system();
            const auto c = parse_c(gc_c, sys);
            const auto g = fiber_graph(sys.r, c, sys, tol);
            emit(gc_dot ? to_dot(g) : to_json(g).dump(), out);
            return kOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return e.code() == ErrorCode::InfeasibleFiber ? kInfeasible : kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kAssertion;
    }
    return kUsage;
}
