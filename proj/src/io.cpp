#include "chowfan/io.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace chowfan {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) fail(errc::malformed_input, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(errc::malformed_input, std::string("missing field \"") + key + "\"");
    return *it;
}

const Json& array_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_array()) fail(errc::malformed_input, std::string("field \"") + key + "\" must be an array");
    return v;
}

bool bool_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_boolean()) fail(errc::malformed_input, std::string("field \"") + key + "\" must be a boolean");
    return v.get<bool>();
}

std::string string_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_string()) fail(errc::malformed_input, std::string("field \"") + key + "\" must be a string");
    return v.get<std::string>();
}

std::size_t index_from_json(const Json& j) {
    if (j.is_number_unsigned()) return j.get<std::size_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
        return static_cast<std::size_t>(j.get<std::int64_t>());
    }
    fail(errc::malformed_input, "expected a nonnegative integer");
}

std::size_t uint_field(const Json& j, const char* key) { return index_from_json(field(j, key)); }

Int int_from_string(const std::string& s) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) fail(errc::malformed_input, "not an integer: \"" + s + "\"");
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') fail(errc::malformed_input, "not an integer: \"" + s + "\"");
    }
    return s[0] == '+' ? Int(s.substr(1)) : Int(s);
}

std::string opt_name(const Json& j) {
    if (!j.is_object()) fail(errc::malformed_input, "expected an object");
    auto it = j.find("name");
    if (it == j.end()) return {};
    if (!it->is_string()) fail(errc::malformed_input, "field \"name\" must be a string");
    return it->get<std::string>();
}

Json cone_generators_json(const Cone& c) {
    Json arr = Json::array();
    for (const auto& g : c.generators()) arr.push_back(to_json(g));
    return arr;
}

Cone cone_from_generators(const Json& j, std::size_t rank) {
    if (!j.is_array()) fail(errc::malformed_input, "cone generators must be an array");
    std::vector<LatticeVector> gens;
    for (const Json& g : j) gens.push_back(lattice_vector_from_json(g));
    return Cone::from_rays(rank, gens);
}

Json ray_map_to_json(const std::map<LatticeVector, Rat>& m, const char* value_key) {
    Json arr = Json::array();
    for (const auto& [ray, value] : m) {
        Json entry;
        entry["ray"] = to_json(ray);
        entry[value_key] = to_json(value);
        arr.push_back(std::move(entry));
    }
    return arr;
}

std::map<LatticeVector, Rat> ray_map_from_json(const Json& j, const char* value_key) {
    if (!j.is_array()) fail(errc::malformed_input, "expected an array of ray entries");
    std::map<LatticeVector, Rat> m;
    for (const Json& entry : j) {
        LatticeVector ray = lattice_vector_from_json(field(entry, "ray"));
        if (!m.emplace(std::move(ray), rat_from_json(field(entry, value_key))).second) {
            fail(errc::malformed_input, "duplicate ray entry");
        }
    }
    return m;
}

Json contact_to_json(const ContactOrder& c) {
    Json j;
    j["direction"] = to_json(c.direction);
    j["anchor"] = cone_generators_json(c.anchor_cone);
    j["tangency"] = ray_map_to_json(c.tangency, "order");
    return j;
}

ContactOrder contact_from_json(const Json& j, std::size_t rank) {
    ContactOrder c;
    c.direction = lattice_vector_from_json(field(j, "direction"));
    c.anchor_cone = cone_from_generators(field(j, "anchor"), rank);
    c.tangency = ray_map_from_json(field(j, "tangency"), "order");
    return c;
}

} // namespace

Json to_json(const Int& n) {
    static const Int lo = std::numeric_limits<std::int64_t>::min();
    static const Int hi = std::numeric_limits<std::int64_t>::max();
    if (n >= lo && n <= hi) return Json(n.convert_to<std::int64_t>());
    return Json(n.str());
}

Json to_json(const Rat& q) {
    if (denominator(q) == 1) return to_json(Int(numerator(q)));
    return Json(to_string(q));
}

Json to_json(const LatticeVector& v) {
    Json arr = Json::array();
    for (const auto& x : v) arr.push_back(to_json(x));
    return arr;
}

Json to_json(const RationalVector& v) {
    Json arr = Json::array();
    for (const auto& x : v) arr.push_back(to_json(x));
    return arr;
}

Int int_from_json(const Json& j) {
    if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return int_from_string(j.get<std::string>());
    fail(errc::malformed_input, "expected an integer");
}

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(int_from_json(j));
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        std::size_t slash = s.find('/');
        if (slash == std::string::npos) return Rat(int_from_string(s));
        Int num = int_from_string(s.substr(0, slash));
        Int den = int_from_string(s.substr(slash + 1));
        if (den <= 0) fail(errc::malformed_input, "denominator must be positive: \"" + s + "\"");
        return Rat(num, den);
    }
    fail(errc::malformed_input, "expected an integer or a \"p/q\" string");
}

LatticeVector lattice_vector_from_json(const Json& j) {
    if (!j.is_array()) fail(errc::malformed_input, "expected an integer vector");
    LatticeVector v;
    for (const Json& x : j) v.push_back(int_from_json(x));
    return v;
}

RationalVector rational_vector_from_json(const Json& j) {
    if (!j.is_array()) fail(errc::malformed_input, "expected a rational vector");
    RationalVector v;
    for (const Json& x : j) v.push_back(rat_from_json(x));
    return v;
}

Json fan_to_json(const Fan& f, const std::string& name) {
    Json j;
    if (!name.empty()) j["name"] = name;
    j["rank"] = f.rank();
    Json rays = Json::array();
    for (const auto& r : f.rays()) rays.push_back(to_json(r));
    j["rays"] = std::move(rays);
    Json cones = Json::array();
    for (const auto& idx : f.maximal_cone_rays()) cones.push_back(idx);
    j["cones"] = std::move(cones);
    j["complete"] = f.is_complete();
    return j;
}

FanDocument fan_from_json(const Json& j) {
    FanDocument doc;
    doc.name = opt_name(j);
    std::size_t rank = uint_field(j, "rank");
    std::vector<LatticeVector> rays;
    for (const Json& rj : array_field(j, "rays")) {
        LatticeVector v = lattice_vector_from_json(rj);
        if (v.size() != rank) fail(errc::malformed_input, "ray has wrong length");
        rays.push_back(std::move(v));
    }
    std::vector<std::vector<std::size_t>> cones;
    for (const Json& cj : array_field(j, "cones")) {
        if (!cj.is_array()) fail(errc::malformed_input, "cone must be an array of ray indices");
        std::vector<std::size_t> idx;
        for (const Json& ij : cj) idx.push_back(index_from_json(ij));
        cones.push_back(std::move(idx));
    }
    doc.fan = Fan::from_ray_indices(rank, rays, cones);
    if (j.contains("complete") && bool_field(j, "complete") != doc.fan.is_complete()) {
        fail(errc::malformed_input, "completeness flag does not match the fan");
    }
    return doc;
}

Json polytope_to_json(const Polytope& q, const std::string& name) {
    Json j;
    if (!name.empty()) j["name"] = name;
    j["rank"] = q.rank();
    Json vs = Json::array();
    for (const auto& v : q.vertices()) vs.push_back(to_json(v));
    j["vertices"] = std::move(vs);
    return j;
}

PolytopeDocument polytope_from_json(const Json& j) {
    PolytopeDocument doc;
    doc.name = opt_name(j);
    std::size_t rank = uint_field(j, "rank");
    std::vector<LatticeVector> pts;
    for (const Json& vj : array_field(j, "vertices")) {
        LatticeVector v = lattice_vector_from_json(vj);
        if (v.size() != rank) fail(errc::malformed_input, "vertex has wrong length");
        pts.push_back(std::move(v));
    }
    doc.polytope = Polytope::from_vertices(rank, pts);
    return doc;
}

Json chain_to_json(const ChainLogMap& c) {
    Json j;
    j["rank"] = c.curve.rank;
    j["direction"] = to_json(c.direction);
    Json vs = Json::array();
    for (std::size_t i = 0; i < c.curve.vertices.size(); ++i) {
        Json vj;
        vj["position"] = to_json(c.curve.vertices[i].position);
        vj["cone"] = cone_generators_json(c.vertex_cones[i]);
        vs.push_back(std::move(vj));
    }
    j["vertices"] = std::move(vs);
    Json be = Json::array();
    for (const auto& e : c.curve.bounded_edges) {
        Json ej;
        ej["tail"] = e.tail;
        ej["head"] = e.head;
        ej["weight"] = to_json(e.weight);
        ej["direction"] = to_json(e.direction);
        ej["length"] = to_json(e.length);
        be.push_back(std::move(ej));
    }
    j["bounded_edges"] = std::move(be);
    Json ue = Json::array();
    for (const auto& e : c.curve.unbounded_edges) {
        Json ej;
        ej["vertex"] = e.vertex;
        ej["weight"] = to_json(e.weight);
        ej["direction"] = to_json(e.direction);
        ej["marker"] = e.marker;
        ue.push_back(std::move(ej));
    }
    j["unbounded_edges"] = std::move(ue);
    return j;
}

ChainLogMap chain_from_json(const Json& j) {
    std::size_t rank = uint_field(j, "rank");
    LatticeVector direction = lattice_vector_from_json(field(j, "direction"));
    TropicalCurve t;
    t.rank = rank;
    std::vector<Cone> cones;
    for (const Json& vj : array_field(j, "vertices")) {
        RationalVector pos = rational_vector_from_json(field(vj, "position"));
        if (pos.size() != rank) fail(errc::malformed_input, "vertex position has wrong length");
        t.vertices.push_back({std::move(pos)});
        cones.push_back(cone_from_generators(field(vj, "cone"), rank));
    }
    for (const Json& ej : array_field(j, "bounded_edges")) {
        BoundedEdge e;
        e.tail = uint_field(ej, "tail");
        e.head = uint_field(ej, "head");
        e.weight = int_from_json(field(ej, "weight"));
        e.direction = lattice_vector_from_json(field(ej, "direction"));
        e.length = rat_from_json(field(ej, "length"));
        if (e.tail >= t.vertices.size() || e.head >= t.vertices.size()) {
            fail(errc::malformed_input, "edge endpoint out of range");
        }
        t.bounded_edges.push_back(std::move(e));
    }
    for (const Json& ej : array_field(j, "unbounded_edges")) {
        UnboundedEdge e;
        e.vertex = uint_field(ej, "vertex");
        e.weight = int_from_json(field(ej, "weight"));
        e.direction = lattice_vector_from_json(field(ej, "direction"));
        e.marker = string_field(ej, "marker");
        if (e.vertex >= t.vertices.size()) fail(errc::malformed_input, "edge endpoint out of range");
        t.unbounded_edges.push_back(std::move(e));
    }
    validate_curve(t);
    return ChainLogMap{std::move(t), std::move(cones), std::move(direction)};
}

Json cycle_to_json(const ToricCycle& c) {
    Json arr = Json::array();
    for (const auto& term : c.terms) {
        Json tj;
        tj["kind"] = term.mobile ? "mobile" : "invariant";
        tj["stratum"] = cone_generators_json(term.stratum);
        if (term.mobile) tj["direction"] = to_json(term.direction);
        tj["multiplicity"] = to_json(term.multiplicity);
        arr.push_back(std::move(tj));
    }
    return arr;
}

ToricCycle cycle_from_json(const Json& j, std::size_t rank) {
    if (!j.is_array()) fail(errc::malformed_input, "cycle must be an array of terms");
    ToricCycle c;
    for (const Json& tj : j) {
        CycleTerm term;
        std::string kind = string_field(tj, "kind");
        if (kind == "mobile") {
            term.mobile = true;
            term.direction = lattice_vector_from_json(field(tj, "direction"));
        } else if (kind != "invariant") {
            fail(errc::malformed_input, "cycle term kind must be \"invariant\" or \"mobile\"");
        }
        term.stratum = cone_from_generators(field(tj, "stratum"), rank);
        term.multiplicity = int_from_json(field(tj, "multiplicity"));
        if (term.multiplicity < 1) fail(errc::malformed_input, "cycle multiplicity must be positive");
        c.terms.push_back(std::move(term));
    }
    return c;
}

Json trace_to_json(const Fan& f, const std::string& fan_name, const RationalVector& point,
                   const ChainLogMap& chain, const std::vector<std::string>& notices) {
    Json j;
    j["schema"] = "chowfan-trace";
    j["fan"] = fan_to_json(f, fan_name);
    j["direction"] = to_json(chain.direction);
    j["point"] = to_json(point);
    j["notices"] = notices;
    j["type"] = chain_type(chain);
    j["chain"] = chain_to_json(chain);
    j["cycle"] = cycle_to_json(cycle_of_chain(chain));
    Json checks;
    checks["balanced"] = is_balanced(chain.curve);
    checks["chain_shape"] = chain_shape_ok(chain);
    j["checks"] = std::move(checks);
    return j;
}

TraceDocument trace_from_json(const Json& j) {
    if (string_field(j, "schema") != "chowfan-trace") {
        fail(errc::malformed_input, "expected a chowfan-trace document");
    }
    TraceDocument doc;
    FanDocument fd = fan_from_json(field(j, "fan"));
    doc.fan = std::move(fd.fan);
    doc.fan_name = std::move(fd.name);
    doc.point = rational_vector_from_json(field(j, "point"));
    doc.chain = chain_from_json(field(j, "chain"));
    doc.cycle = cycle_from_json(field(j, "cycle"), doc.fan.rank());
    doc.type = string_field(j, "type");
    for (const Json& n : array_field(j, "notices")) {
        if (!n.is_string()) fail(errc::malformed_input, "notices must be strings");
        doc.notices.push_back(n.get<std::string>());
    }
    LatticeVector direction = lattice_vector_from_json(field(j, "direction"));
    if (direction != doc.chain.direction) {
        fail(errc::malformed_input, "direction does not match the chain");
    }
    // Derived fields must agree with the chain they were derived from.
    if (doc.type != chain_type(doc.chain) || !(doc.cycle == cycle_of_chain(doc.chain))) {
        fail(errc::malformed_input, "derived chain data is inconsistent");
    }
    return doc;
}

namespace {

Json discrete_to_json(const DiscreteData& d) {
    Json j;
    j["contact_0"] = contact_to_json(d.contact_0);
    j["contact_infinity"] = contact_to_json(d.contact_infinity);
    j["degree_vector"] = ray_map_to_json(d.degree_vector, "degree");
    return j;
}

DiscreteData discrete_from_json(const Json& j, const LatticeVector& direction, std::size_t rank) {
    DiscreteData d;
    d.direction = direction;
    d.contact_0 = contact_from_json(field(j, "contact_0"), rank);
    d.contact_infinity = contact_from_json(field(j, "contact_infinity"), rank);
    d.degree_vector = ray_map_from_json(field(j, "degree_vector"), "degree");
    return d;
}

} // namespace

Json report_to_json(const Fan& input, const std::string& fan_name, const StrataReport& r,
                    const std::vector<std::string>& notices) {
    Json j;
    j["schema"] = "chowfan-report";
    j["fan"] = fan_to_json(input, fan_name);
    j["direction"] = to_json(r.direction);
    j["notices"] = notices;
    j["smooth"] = r.smooth;
    j["non_simplicial_anchor"] = r.non_simplicial_anchor;
    j["samples_per_cone"] = r.samples_per_cone;
    j["duplicate_types"] = r.duplicate_types;
    Json proj = Json::array();
    for (std::size_t i = 0; i < r.projection.target_rank; ++i) {
        proj.push_back(to_json(r.projection.projection.row(i)));
    }
    j["projection"] = std::move(proj);
    j["discrete_data"] = r.discrete ? discrete_to_json(*r.discrete) : Json(nullptr);
    j["quotient"] = fan_to_json(r.quotient);
    Json strata = Json::array();
    for (const auto& e : r.entries) {
        Json ej;
        ej["cone"] = cone_generators_json(e.cone);
        ej["sample"] = to_json(e.sample);
        ej["type"] = e.type_key;
        ej["chain"] = chain_to_json(e.chain);
        ej["cycle"] = cycle_to_json(e.cycle);
        ej["class_degrees"] = e.has_degrees ? ray_map_to_json(e.degrees, "degree") : Json(nullptr);
        Json checks;
        checks["balanced"] = e.balanced;
        checks["chain_shape"] = e.chain_shape;
        checks["type_constant"] = e.type_constant;
        checks["conservation_applicable"] = e.conservation_applicable;
        checks["conservation"] = e.conservation;
        ej["checks"] = std::move(checks);
        strata.push_back(std::move(ej));
    }
    j["strata"] = std::move(strata);
    return j;
}

ReportDocument report_from_json(const Json& j) {
    if (string_field(j, "schema") != "chowfan-report") {
        fail(errc::malformed_input, "expected a chowfan-report document");
    }
    ReportDocument doc;
    FanDocument fd = fan_from_json(field(j, "fan"));
    doc.fan = std::move(fd.fan);
    doc.fan_name = std::move(fd.name);
    for (const Json& n : array_field(j, "notices")) {
        if (!n.is_string()) fail(errc::malformed_input, "notices must be strings");
        doc.notices.push_back(n.get<std::string>());
    }

    StrataReport r;
    r.direction = lattice_vector_from_json(field(j, "direction"));
    r.projection = quotient_lattice(r.direction);
    const Json& proj = array_field(j, "projection");
    if (proj.size() != r.projection.target_rank) {
        fail(errc::malformed_input, "projection matrix does not match the direction");
    }
    for (std::size_t i = 0; i < r.projection.target_rank; ++i) {
        if (lattice_vector_from_json(proj[i]) != r.projection.projection.row(i)) {
            fail(errc::malformed_input, "projection matrix does not match the direction");
        }
    }
    r.smooth = bool_field(j, "smooth");
    r.non_simplicial_anchor = bool_field(j, "non_simplicial_anchor");
    r.samples_per_cone = uint_field(j, "samples_per_cone");
    r.duplicate_types = bool_field(j, "duplicate_types");
    const Json& dd = field(j, "discrete_data");
    if (!dd.is_null()) r.discrete = discrete_from_json(dd, r.direction, doc.fan.rank());
    r.quotient = fan_from_json(field(j, "quotient")).fan;
    for (const Json& ej : array_field(j, "strata")) {
        StratumEntry e;
        e.cone = cone_from_generators(field(ej, "cone"), r.projection.target_rank);
        e.sample = rational_vector_from_json(field(ej, "sample"));
        e.type_key = string_field(ej, "type");
        e.chain = chain_from_json(field(ej, "chain"));
        e.cycle = cycle_from_json(field(ej, "cycle"), doc.fan.rank());
        const Json& deg = field(ej, "class_degrees");
        if (!deg.is_null()) {
            e.degrees = ray_map_from_json(deg, "degree");
            e.has_degrees = true;
        }
        const Json& checks = field(ej, "checks");
        e.balanced = bool_field(checks, "balanced");
        e.chain_shape = bool_field(checks, "chain_shape");
        e.type_constant = bool_field(checks, "type_constant");
        e.conservation_applicable = bool_field(checks, "conservation_applicable");
        e.conservation = bool_field(checks, "conservation");
        r.entries.push_back(std::move(e));
    }
    doc.report = std::move(r);
    return doc;
}

Json graded_monoid_to_json(const GradedMonoid& m, const std::string& name) {
    Json j;
    j["schema"] = "chowfan-monoid";
    if (!name.empty()) j["name"] = name;
    j["rank"] = m.monoid.rank;
    Json gens = Json::array();
    for (const auto& g : m.monoid.generators) gens.push_back(to_json(g));
    j["generators"] = std::move(gens);
    j["degree_one_generated"] = m.degree_one_generated;
    return j;
}

Json charts_to_json(const Polytope& q, const std::string& name) {
    Json j;
    j["schema"] = "chowfan-charts";
    if (!name.empty()) j["name"] = name;
    j["rank"] = q.rank();
    Json charts = Json::array();
    for (const auto& v : q.vertices()) {
        Json cj;
        cj["vertex"] = to_json(v);
        Json gens = Json::array();
        for (const auto& g : vertex_chart_monoid(q, v).generators) gens.push_back(to_json(g));
        cj["generators"] = std::move(gens);
        charts.push_back(std::move(cj));
    }
    j["charts"] = std::move(charts);
    return j;
}

// ---- SVG rendering ----------------------------------------------------------

namespace {

Rat rat_abs(const Rat& v) { return v < 0 ? Rat(Rat(0) - v) : v; }

// Exact decimal rounding to two places (half away from zero would need no
// tie policy here; half-up is fixed for determinism).
std::string svg_num(const Rat& v) {
    Rat w = v * 100;
    Int n = numerator(w);
    Int d = denominator(w); // > 0
    Int num2 = 2 * n + d;
    Int den2 = 2 * d;
    Int q = num2 / den2; // truncates toward zero
    if (num2 % den2 != 0 && num2 < 0) --q; // floor for negatives
    bool neg = q < 0;
    Int a = neg ? Int(-q) : q;
    std::string ip = Int(a / 100).str();
    std::string fp = Int(a % 100).str();
    if (fp.size() < 2) fp.insert(fp.begin(), 2 - fp.size(), '0');
    return (neg ? "-" : "") + ip + "." + fp;
}

struct Canvas {
    Rat scale; // world -> pixel factor; pixel y axis points down

    std::string x(const Rat& wx) const { return svg_num(Rat(wx * scale)); }
    std::string y(const Rat& wy) const { return svg_num(Rat(Rat(0) - wy * scale)); }
    std::string point(const RationalVector& p) const { return x(p[0]) + "," + y(p[1]); }
};

// Scales a nonzero direction so it ends on the boundary of the square
// [-L, L]^2.
RationalVector to_boundary(const RationalVector& v, const Int& L) {
    Rat m = std::max(rat_abs(v[0]), rat_abs(v[1]));
    return scale(Rat(Rat(L) / m), v);
}

const char* kSectorFill[] = {"#dbeafe", "#dcfce7", "#fee2e2", "#fef9c3",
                             "#f3e8ff", "#e0f2fe", "#ffedd5", "#f1f5f9"};
const char* kChainColor[] = {"#1d4ed8", "#15803d", "#b91c1c",
                             "#a16207", "#7e22ce", "#0369a1"};

} // namespace

std::string render_svg(const Json& document) {
    std::string schema = string_field(document, "schema");
    Fan fan;
    std::vector<ChainLogMap> chains;
    if (schema == "chowfan-report") {
        fan = fan_from_json(field(document, "fan")).fan;
        for (const Json& ej : array_field(document, "strata")) {
            chains.push_back(chain_from_json(field(ej, "chain")));
        }
    } else if (schema == "chowfan-trace") {
        TraceDocument doc = trace_from_json(document);
        fan = std::move(doc.fan);
        chains.push_back(std::move(doc.chain));
    } else {
        fail(errc::malformed_input, "expected a chowfan-report or chowfan-trace document");
    }
    if (fan.rank() != 2) fail(errc::rank_mismatch, "SVG rendering needs a rank-2 fan");

    // Scene half-width: the largest chain coordinate plus margin, at least 3.
    Rat extent(1);
    for (const auto& c : chains) {
        for (const auto& v : c.curve.vertices) {
            for (const auto& coord : v.position) extent = std::max(extent, rat_abs(coord));
        }
    }
    Int L = numerator(extent) / denominator(extent);
    if (Rat(L) < extent) ++L;
    L += 2;
    Canvas cv{Rat(280) / Rat(L)};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\""
           " viewBox=\"-320 -320 640 640\" font-family=\"monospace\">\n";
    svg << "  <rect x=\"-320\" y=\"-320\" width=\"640\" height=\"640\" fill=\"#ffffff\"/>\n";

    // Maximal cones as shaded sectors (quad inscribed in the sector: the two
    // boundary directions plus their sum, all pushed to the square edge).
    const auto& maximal = fan.maximal_cones();
    for (std::size_t i = 0; i < maximal.size(); ++i) {
        const auto& gens = maximal[i].generators();
        if (gens.size() != 2) continue; // rays are drawn below; no area to shade
        RationalVector a = to_boundary(to_rational(gens[0]), L);
        RationalVector b = to_boundary(to_rational(gens[1]), L);
        RationalVector mid = to_boundary(add(a, b), L);
        svg << "  <polygon points=\"0,0 " << cv.point(a) << " " << cv.point(mid) << " "
            << cv.point(b) << "\" fill=\"" << kSectorFill[i % 8] << "\"/>\n";
    }

    // Rays with coordinate labels.
    for (const auto& ray : fan.rays()) {
        RationalVector tip = to_boundary(to_rational(ray), L);
        RationalVector label = scale(Rat(86, 100), tip);
        svg << "  <line x1=\"0\" y1=\"0\" x2=\"" << cv.x(tip[0]) << "\" y2=\"" << cv.y(tip[1])
            << "\" stroke=\"#334155\" stroke-width=\"2\"/>\n";
        svg << "  <text x=\"" << cv.x(label[0]) << "\" y=\"" << cv.y(label[1])
            << "\" font-size=\"13\" fill=\"#334155\" text-anchor=\"middle\">" << to_string(ray)
            << "</text>\n";
    }

    // Traced chains: the full line, bounded edges emphasized, vertices dotted,
    // marker labels at the two ends.
    for (std::size_t ci = 0; ci < chains.size(); ++ci) {
        const ChainLogMap& c = chains[ci];
        const char* color = kChainColor[ci % 6];
        RationalVector dir = to_rational(c.direction);
        Rat m = std::max(rat_abs(dir[0]), rat_abs(dir[1]));
        Rat t = Rat(3 * L) / m;
        const RationalVector& first = c.curve.vertices.front().position;
        const RationalVector& last = c.curve.vertices.back().position;
        RationalVector start = add(first, scale(Rat(Rat(0) - t), dir));
        RationalVector end = add(last, scale(t, dir));
        svg << "  <line x1=\"" << cv.x(start[0]) << "\" y1=\"" << cv.y(start[1]) << "\" x2=\""
            << cv.x(end[0]) << "\" y2=\"" << cv.y(end[1]) << "\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
        for (const auto& e : c.curve.bounded_edges) {
            const RationalVector& p = c.curve.vertices[e.tail].position;
            const RationalVector& q = c.curve.vertices[e.head].position;
            svg << "  <line x1=\"" << cv.x(p[0]) << "\" y1=\"" << cv.y(p[1]) << "\" x2=\""
                << cv.x(q[0]) << "\" y2=\"" << cv.y(q[1]) << "\" stroke=\"" << color
                << "\" stroke-width=\"3.5\"/>\n";
        }
        for (const auto& v : c.curve.vertices) {
            svg << "  <circle cx=\"" << cv.x(v.position[0]) << "\" cy=\"" << cv.y(v.position[1])
                << "\" r=\"5\" fill=\"" << color << "\" stroke=\"#ffffff\" stroke-width=\"1.5\"/>\n";
        }
        for (const auto& e : c.curve.unbounded_edges) {
            if (e.marker.empty()) continue;
            // Anchor the label where the edge leaves the square |w| = 15L/14
            // (the 300-pixel ring, safely inside the 320-pixel viewBox).
            RationalVector ed = to_rational(e.direction);
            const RationalVector& p = c.curve.vertices[e.vertex].position;
            Rat ring = Rat(L) * Rat(15, 14);
            Rat t(0);
            bool have_t = false;
            for (std::size_t i = 0; i < 2; ++i) {
                if (ed[i] == 0) continue;
                Rat cand = Rat((ed[i] > 0 ? ring : Rat(Rat(0) - ring)) - p[i]) / ed[i];
                if (!have_t || cand < t) t = cand;
                have_t = true;
            }
            RationalVector at = add(p, scale(t, ed));
            svg << "  <text x=\"" << cv.x(at[0]) << "\" y=\"" << cv.y(at[1])
                << "\" font-size=\"15\" fill=\"" << color << "\" text-anchor=\"middle\">"
                << e.marker << "</text>\n";
        }
    }

    svg << "</svg>\n";
    return svg.str();
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

} // namespace chowfan
