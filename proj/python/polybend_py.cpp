// Python bindings: polygons are (n, 3) edge-direction lists, diagonal sets are
// lists of (i, j) chords (0-based), reports come back as plain dicts.

#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "polybend/errors.hpp"
#include "polybend/verify.hpp"

namespace py = pybind11;
using namespace polybend;

namespace {

using Edges = std::vector<std::array<double, 3>>;
using Chords = std::vector<std::pair<int, int>>;

std::vector<Vec3> to_vec3(const Edges& e) {
    std::vector<Vec3> out;
    out.reserve(e.size());
    for (const auto& a : e) out.push_back({a[0], a[1], a[2]});
    return out;
}

Edges from_vec3(const std::vector<Vec3>& v) {
    Edges out;
    out.reserve(v.size());
    for (const auto& a : v) out.push_back({a.x, a.y, a.z});
    return out;
}

Chords from_diagonals(const DiagonalSet& ds) {
    Chords out;
    for (const auto& c : ds.diagonals()) out.emplace_back(c.i, c.j);
    return out;
}

BendingSystem system_of(const std::vector<double>& r, const std::optional<Chords>& diagonals) {
    SideLengths sides(r);
    const int n = static_cast<int>(r.size());
    if (!diagonals) return {sides, caterpillar(n)};
    std::vector<Chord> ch;
    for (const auto& [i, j] : *diagonals) ch.push_back({i, j});
    return {sides, validate_diagonals(n, ch)};
}

Polygon polygon_of(const BendingSystem& sys, const Edges& edges) {
    return validate_polygon(to_vec3(edges), sys.r);
}

py::object to_py(const json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

TwoFrame frame_of(const std::vector<Complex>& z, const std::vector<Complex>& w) {
    return validate_frame(z, w);
}

}  // namespace

PYBIND11_MODULE(_polybend, m) {
    m.doc() = "Bending flows on polygon spaces";
    m.attr("__version__") = version();

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
    error_type.call_once_and_store_result(
        [&]() { return py::exception<Error>(m, "PolybendError", PyExc_ValueError); });
    // Instances carry the error name in .code, e.g. "InfeasibleFiber".
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const py::object& type = error_type.get_stored();
            py::object inst = type(e.what());
            inst.attr("code") = error_name(e.code());
            PyErr_SetObject(type.ptr(), inst.ptr());
        }
    });

    m.def("caterpillar", [](int n) { return from_diagonals(caterpillar(n)); }, py::arg("n"));
    m.def("snake", [](int n) { return from_diagonals(snake(n)); }, py::arg("n"));
    m.def("enumerate_triangulations", [](int n) {
        std::vector<Chords> out;
        for (const auto& ds : enumerate_triangulations(n)) out.push_back(from_diagonals(ds));
        return out;
    }, py::arg("n"));
    m.def("is_generic", [](const std::vector<double>& r) { return is_generic(SideLengths(r)); }, py::arg("r"));

    m.def("closing_defect", [](const std::vector<double>& r, const Edges& edges) {
        return closing_defect(Polygon{SideLengths(r), to_vec3(edges)});
    }, py::arg("r"), py::arg("edges"));
    m.def("omega", [](const std::vector<double>& r, const Edges& edges, const Edges& X, const Edges& Y) {
        const Polygon u = validate_polygon(to_vec3(edges), SideLengths(r));
        return omega(u, {to_vec3(X)}, {to_vec3(Y)});
    }, py::arg("r"), py::arg("edges"), py::arg("X"), py::arg("Y"));

    m.def("momentum", [](const std::vector<double>& r, const Edges& edges, std::optional<Chords> diagonals) {
        const auto sys = system_of(r, diagonals);
        return momentum_F(sys, polygon_of(sys, edges)).c;
    }, py::arg("r"), py::arg("edges"), py::arg("diagonals") = py::none(),
       "Half squared diagonal lengths |d_k|^2 / 2.");
    m.def("flow", [](const std::vector<double>& r, const Edges& edges, int k, double t, bool normalized,
                     std::optional<Chords> diagonals) {
        const auto sys = system_of(r, diagonals);
        return from_vec3(flow(sys, polygon_of(sys, edges), k, t, normalized).u);
    }, py::arg("r"), py::arg("edges"), py::arg("k"), py::arg("t"), py::arg("normalized") = false,
       py::arg("diagonals") = py::none());
    m.def("poisson_bracket", [](const std::vector<double>& r, const Edges& edges, int k, int l,
                                std::optional<Chords> diagonals) {
        const auto sys = system_of(r, diagonals);
        return poisson_bracket(sys, polygon_of(sys, edges), k, l);
    }, py::arg("r"), py::arg("edges"), py::arg("k"), py::arg("m"), py::arg("diagonals") = py::none());
    m.def("action_angle", [](const std::vector<double>& r, const Edges& edges, std::optional<Chords> diagonals) {
        const auto sys = system_of(r, diagonals);
        const auto aa = action_angle(sys, polygon_of(sys, edges));
        return std::make_pair(aa.length, aa.angle);
    }, py::arg("r"), py::arg("edges"), py::arg("diagonals") = py::none(), "Returns (lengths, angles).");
    m.def("build_polygon", [](const std::vector<double>& r, const std::vector<double>& c,
                              const std::vector<double>& theta, std::optional<Chords> diagonals) {
        const auto sys = system_of(r, diagonals);
        return from_vec3(build_polygon(sys, {c}, theta).u);
    }, py::arg("r"), py::arg("c"), py::arg("theta"), py::arg("diagonals") = py::none());
    m.def("sample_fiber", [](const std::vector<double>& r, const std::vector<double>& c, int count,
                             std::uint64_t seed, std::optional<Chords> diagonals) {
        const auto sys = system_of(r, diagonals);
        std::vector<Edges> out;
        for (const auto& u : sample_fiber(sys, {c}, count, seed)) out.push_back(from_vec3(u.u));
        return out;
    }, py::arg("r"), py::arg("c"), py::arg("count"), py::arg("seed") = 7, py::arg("diagonals") = py::none());

    m.def("is_singular_fiber", [](const std::vector<double>& r, const std::vector<double>& c,
                                  std::optional<Chords> diagonals) {
        return is_singular_fiber(system_of(r, diagonals), {c});
    }, py::arg("r"), py::arg("c"), py::arg("diagonals") = py::none());
    m.def("classify_fiber", [](const std::vector<double>& r, const std::vector<double>& c,
                               std::optional<Chords> diagonals) {
        return to_py(to_json(classify_fiber(system_of(r, diagonals), {c})));
    }, py::arg("r"), py::arg("c"), py::arg("diagonals") = py::none());
    m.def("certify_isotropy", [](const std::vector<double>& r, const std::vector<double>& c, int samples,
                                 std::uint64_t seed, std::optional<Chords> diagonals) {
        return to_py(to_json(certify_isotropy(system_of(r, diagonals), {c}, samples, seed)));
    }, py::arg("r"), py::arg("c"), py::arg("samples") = 20, py::arg("seed") = 7,
       py::arg("diagonals") = py::none());

    m.def("frame_to_polygon", [](const std::vector<Complex>& z, const std::vector<Complex>& w) {
        const auto fp = frame_to_polygon(frame_of(z, w));
        return std::make_pair(from_vec3(fp.edges), fp.r);
    }, py::arg("z"), py::arg("w"), "Returns (edge vectors, side lengths).");
    m.def("gc_pattern", [](const std::vector<Complex>& z, const std::vector<Complex>& w) {
        return gc_pattern(frame_of(z, w)).mu;
    }, py::arg("z"), py::arg("w"), "Row k-1 holds mu_1^k .. mu_k^k; only the first two can be nonzero.");
    m.def("fiber_graph", [](const std::vector<double>& r, const std::vector<double>& c) {
        const auto sys = system_of(r, std::nullopt);
        return to_py(to_json(fiber_graph(sys.r, {c}, sys)));
    }, py::arg("r"), py::arg("c"));

    m.def("verify", [](const std::string& suite, std::uint64_t seed, int n, int samples, int grid) {
        RunConfig cfg;
        cfg.seed = seed;
        cfg.n = n;
        cfg.samples = samples;
        cfg.grid = grid;
        SuiteReport rep;
        {
            py::gil_scoped_release release;
            if (suite == "poisson") rep = verify_poisson(cfg);
            else if (suite == "flow") rep = verify_flow(cfg);
            else if (suite == "action-angle") rep = verify_action_angle(cfg);
            else if (suite == "isotropy") rep = verify_isotropy(cfg);
            else if (suite == "grassmann") rep = verify_grassmann(cfg);
            else if (suite == "gc") rep = verify_gc(cfg);
            else throw Error(ErrorCode::ContractViolation, "unknown suite " + suite);
        }
        return to_py(rep.to_json());
    }, py::arg("suite"), py::arg("seed") = 7, py::arg("n") = 0, py::arg("samples") = 0, py::arg("grid") = 9);
}
