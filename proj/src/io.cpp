#include "polybend/io.hpp"

#include "polybend/errors.hpp"

namespace polybend {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::SchemaViolation, what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) schema(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) schema(where + " must be a number");
    return j.get<double>();
}

std::vector<double> numbers(const json& j, const std::string& where) {
    if (!j.is_array()) schema(where + " must be an array");
    std::vector<double> out;
    for (const auto& x : j) out.push_back(number(x, where));
    return out;
}

int integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) schema(where + " must be an integer");
    return j.get<int>();
}

}  // namespace

json to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json to_json(const Polygon& u) {
    json e = json::array();
    for (const auto& v : u.u) e.push_back(to_json(v));
    return {{"r", u.r.values()}, {"u", e}};
}

json to_json(const DiagonalSet& ds) {
    json d = json::array();
    for (const auto& c : ds.diagonals()) d.push_back({c.i, c.j});
    return {{"n", ds.n()}, {"diagonals", d}};
}

json to_json(const FiberValue& c) { return {{"c", c.c}}; }

json to_json(const ActionAngle& a) { return {{"length", a.length}, {"angle", a.angle}}; }

json to_json(const FaceStatus& s) {
    json j = {{"face", {s.face.i, s.face.j, s.face.k}},
              {"status", to_string(s.status)},
              {"sides", s.sides},
              {"boundary_case", s.boundary_case}};
    if (s.status != FaceState::Nondegenerate) j["alpha"] = s.alpha;
    return j;
}

json to_json(const FiberModel& m) {
    json pieces = json::array();
    for (const auto& p : m.pieces)
        pieces.push_back({{"kind", to_string(p.kind)}, {"torus_rank", p.torus_rank}, {"edges", p.edges}});
    return {{"p", m.p},
            {"q", m.q},
            {"k", m.k},
            {"type", to_string(m.type)},
            {"lagrangian", m.lagrangian},
            {"dim_total", m.dim_total},
            {"dim_quotient", m.dim_quotient},
            {"pieces", pieces},
            {"vanishing", m.vanishing},
            {"singular", m.singular},
            {"boundary_case", m.boundary_case}};
}

json to_json(const IsotropyReport& r) {
    return {{"pass", r.pass},
            {"max_abs_omega", r.max_abs_omega},
            {"threshold", r.threshold},
            {"seed", r.seed},
            {"samples", r.samples},
            {"sample_max", r.sample_max},
            {"sample_rank", r.sample_rank},
            {"model", to_json(r.model)}};
}

json to_json(const TwoFrame& f) {
    json z = json::array(), w = json::array();
    for (int i = 0; i < f.n(); ++i) {
        z.push_back({f.z[i].real(), f.z[i].imag()});
        w.push_back({f.w[i].real(), f.w[i].imag()});
    }
    return {{"n", f.n()}, {"z", z}, {"w", w}};
}

json to_json(const GCPattern& g) { return {{"n", g.n()}, {"mu", g.mu}}; }

json to_json(const FiberGraph& g) {
    json v = json::array(), e = json::array();
    for (const auto& x : g.vertices) v.push_back({{"i", x.i}, {"k", x.k}, {"value", x.value}});
    for (const auto& [a, b] : g.edges) e.push_back({a, b});
    return {{"vertices", v}, {"edges", e}, {"diamonds", g.diamonds}};
}

json to_json(const Tolerances& t) {
    return {{"kernel", t.kernel},     {"symplectic", t.symplectic}, {"unit_repair", t.unit_repair},
            {"closing", t.closing},   {"tangency", t.tangency},     {"collinear", t.collinear},
            {"equality", t.equality}, {"rank", t.rank},             {"isotropy", t.isotropy},
            {"graph", t.graph}};
}

Polygon polygon_from_json(const json& j, const Tolerances& tol) {
    const auto r = numbers(field(j, "r"), "r");
    const json& ju = field(j, "u");
    if (!ju.is_array()) schema("u must be an array");
    std::vector<Vec3> u;
    for (const auto& e : ju) {
        const auto c = numbers(e, "u[]");
        if (c.size() != 3) schema("each edge needs 3 coordinates");
        u.push_back({c[0], c[1], c[2]});
    }
    return validate_polygon(std::move(u), SideLengths(r), tol);
}

DiagonalSet diagonals_from_json(const json& j) {
    const int n = integer(field(j, "n"), "n");
    const json& jd = field(j, "diagonals");
    if (!jd.is_array()) schema("diagonals must be an array");
    std::vector<Chord> d;
    for (const auto& p : jd) {
        if (!p.is_array() || p.size() != 2) schema("each diagonal is a pair [i, j]");
        d.push_back({integer(p[0], "diagonal"), integer(p[1], "diagonal")});
    }
    return validate_diagonals(n, d);
}

FiberValue fiber_value_from_json(const json& j) { return {numbers(field(j, "c"), "c")}; }

TwoFrame frame_from_json(const json& j) {
    const int n = integer(field(j, "n"), "n");
    auto read = [&](const char* key) {
        const json& a = field(j, key);
        if (!a.is_array() || static_cast<int>(a.size()) != n) schema(std::string(key) + " must have n entries");
        std::vector<Complex> out;
        for (const auto& x : a) {
            const auto c = numbers(x, key);
            if (c.size() != 2) schema(std::string(key) + " entries are [re, im]");
            out.emplace_back(c[0], c[1]);
        }
        return out;
    };
    return validate_frame(read("z"), read("w"));
}

}  // namespace polybend
