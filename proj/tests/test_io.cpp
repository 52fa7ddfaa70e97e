#include "doctest.h"

#include <functional>

#include "chowfan/io.hpp"

using namespace chowfan;

namespace {

LatticeVector lv(std::initializer_list<int> xs) {
    LatticeVector v;
    for (int x : xs) v.emplace_back(x);
    return v;
}

RationalVector rv(std::initializer_list<Rat> xs) { return RationalVector(xs); }

Fan p2_fan() {
    return Fan::from_ray_indices(2, {lv({1, 0}), lv({0, 1}), lv({-1, -1})},
                                 {{0, 1}, {1, 2}, {2, 0}});
}

Fan p1xp1_fan() {
    return Fan::from_ray_indices(2, {lv({1, 0}), lv({0, 1}), lv({-1, 0}), lv({0, -1})},
                                 {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

Fan wp112_fan() {
    return Fan::from_ray_indices(2, {lv({1, 0}), lv({0, 1}), lv({-1, -2})},
                                 {{0, 1}, {1, 2}, {2, 0}});
}

Fan octahedron_fan() {
    std::vector<LatticeVector> rays;
    for (int x : {1, -1})
        for (int y : {1, -1})
            for (int z : {1, -1}) rays.push_back(lv({x, y, z}));
    // rays: 0:(1,1,1) 1:(1,1,-1) 2:(1,-1,1) 3:(1,-1,-1) 4..7 mirrored
    return Fan::from_cones(3, {Cone::from_rays(3, {rays[0], rays[1], rays[2], rays[3]}),
                               Cone::from_rays(3, {rays[4], rays[5], rays[6], rays[7]}),
                               Cone::from_rays(3, {rays[0], rays[1], rays[4], rays[5]}),
                               Cone::from_rays(3, {rays[2], rays[3], rays[6], rays[7]}),
                               Cone::from_rays(3, {rays[0], rays[2], rays[4], rays[6]}),
                               Cone::from_rays(3, {rays[1], rays[3], rays[5], rays[7]})});
}

errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return errc::malformed_input;
}

// No JSON output may contain a floating-point number anywhere.
void require_exact(const Json& j) {
    REQUIRE(!j.is_number_float());
    if (j.is_object() || j.is_array())
        for (const auto& child : j) require_exact(child);
}

} // namespace

TEST_CASE("rational scalars round-trip through JSON") {
    CHECK(to_json(Rat(5)) == Json(5));
    CHECK(to_json(Rat(-3)) == Json(-3));
    CHECK(to_json(Rat(3, 4)) == Json("3/4"));
    CHECK(to_json(Rat(-7, 2)) == Json("-7/2"));
    CHECK(to_json(Rat(6, 4)) == Json("3/2")); // lowest terms
    CHECK(rat_from_json(Json(5)) == Rat(5));
    CHECK(rat_from_json(Json("3/4")) == Rat(3, 4));
    CHECK(rat_from_json(Json("-7/2")) == Rat(-7, 2));
    CHECK(rat_from_json(Json("6/4")) == Rat(3, 2));
    CHECK(rat_from_json(Json("12")) == Rat(12));

    // Integers beyond 64 bits travel as decimal strings.
    Int big("123456789012345678901234567890");
    CHECK(to_json(big).is_string());
    CHECK(int_from_json(to_json(big)) == big);
    CHECK(to_json(Int(7)) == Json(7));
    CHECK(int_from_json(Json("-42")) == Int(-42));

    CHECK(code_of([] { rat_from_json(Json("1/0")); }) == errc::malformed_input);
    CHECK(code_of([] { rat_from_json(Json("1/-2")); }) == errc::malformed_input);
    CHECK(code_of([] { rat_from_json(Json("abc")); }) == errc::malformed_input);
    CHECK(code_of([] { rat_from_json(Json(1.5)); }) == errc::malformed_input);
    CHECK(code_of([] { rat_from_json(Json(true)); }) == errc::malformed_input);
    CHECK(code_of([] { int_from_json(Json(2.0)); }) == errc::malformed_input);
    CHECK(code_of([] { int_from_json(Json("1/2")); }) == errc::malformed_input);
    CHECK(code_of([] { int_from_json(Json("")); }) == errc::malformed_input);
}

TEST_CASE("vectors round-trip through JSON") {
    LatticeVector v = lv({3, -2, 0});
    CHECK(lattice_vector_from_json(to_json(v)) == v);
    RationalVector q = rv({Rat(1, 2), Rat(-3), Rat(0)});
    CHECK(rational_vector_from_json(to_json(q)) == q);
    CHECK(rational_vector_from_json(to_json(q)) == q);
    CHECK(code_of([] { lattice_vector_from_json(Json(3)); }) == errc::malformed_input);
    CHECK(code_of([] {
              Json arr = Json::array();
              arr.push_back(0.5);
              rational_vector_from_json(arr);
          }) == errc::malformed_input);
}

TEST_CASE("fan documents round-trip") {
    Fan f = p2_fan();
    Json j = fan_to_json(f, "p2");
    FanDocument doc = fan_from_json(j);
    CHECK(doc.fan == f);
    CHECK(doc.name == "p2");
    CHECK(dump_json(fan_to_json(doc.fan, doc.name)) == dump_json(j));
    require_exact(j);

    // Documents without a name parse to an empty name and serialize without
    // the field.
    Json anon = fan_to_json(f);
    CHECK(!anon.contains("name"));
    CHECK(fan_from_json(anon).fan == f);
}

TEST_CASE("fan documents reject schema violations") {
    Json good = fan_to_json(p2_fan(), "p2");

    Json j = good;
    j.erase("rays");
    CHECK(code_of([&] { fan_from_json(j); }) == errc::malformed_input);

    j = good;
    j["cones"][0][0] = 99; // ray index out of range
    CHECK(code_of([&] { fan_from_json(j); }) == errc::malformed_input);

    j = good;
    j["rays"][0] = Json::array({2, 0}); // imprimitive ray: invalid fan, not bad JSON
    CHECK(code_of([&] { fan_from_json(j); }) == errc::non_primitive_ray);

    j = good;
    j["rays"][0] = Json::array({1.0, 0.0}); // floats never parse
    CHECK(code_of([&] { fan_from_json(j); }) == errc::malformed_input);

    j = good;
    j["complete"] = false; // P² is complete; a lying flag is rejected
    CHECK(code_of([&] { fan_from_json(j); }) == errc::malformed_input);

    j = good;
    j["rays"][0] = Json::array({1}); // wrong length
    CHECK(code_of([&] { fan_from_json(j); }) == errc::malformed_input);
}

TEST_CASE("polytope documents round-trip") {
    Polytope simplex =
        Polytope::from_vertices(2, {lv({0, 0}), lv({1, 0}), lv({0, 1})});
    Json j = polytope_to_json(simplex, "simplex2");
    PolytopeDocument doc = polytope_from_json(j);
    CHECK(doc.polytope == simplex);
    CHECK(doc.name == "simplex2");
    CHECK(dump_json(polytope_to_json(doc.polytope, doc.name)) == dump_json(j));

    Json bad = j;
    bad["vertices"][0] = Json::array({0}); // wrong length
    CHECK(code_of([&] { polytope_from_json(bad); }) == errc::malformed_input);
}

TEST_CASE("chains round-trip and re-validate on parse") {
    Fan f = p1xp1_fan();
    ChainLogMap chain = trace_chain(f, lv({1, 1}), rv({Rat(1)}));
    Json j = chain_to_json(chain);
    require_exact(j);
    ChainLogMap parsed = chain_from_json(j);
    CHECK(chain_type(parsed) == chain_type(chain));
    CHECK(parsed.direction == chain.direction);
    CHECK(parsed.curve.vertices.size() == chain.curve.vertices.size());
    CHECK(dump_json(chain_to_json(parsed)) == dump_json(j));

    Json bad = j;
    bad["bounded_edges"][0]["head"] = 17;
    CHECK(code_of([&] { chain_from_json(bad); }) == errc::malformed_input);

    // A tampered weight breaks balancing, which the parser re-checks.
    bad = j;
    bad["unbounded_edges"][0]["weight"] = 2;
    CHECK_THROWS_AS(chain_from_json(bad), const error&);
}

TEST_CASE("cycles round-trip including mobile terms") {
    ToricCycle c;
    c.terms.push_back({false, Cone::from_rays(2, {lv({1, 0})}), LatticeVector{}, Int(2)});
    c.terms.push_back({true, Cone::from_rays(2, {lv({0, 1})}), lv({1, 0}), Int(1)});
    Json j = cycle_to_json(c);
    CHECK(j[0]["kind"] == "invariant");
    CHECK(!j[0].contains("direction"));
    CHECK(j[1]["kind"] == "mobile");
    ToricCycle parsed = cycle_from_json(j, 2);
    CHECK(parsed == c);

    Json bad = j;
    bad[0]["multiplicity"] = 0;
    CHECK(code_of([&] { cycle_from_json(bad, 2); }) == errc::malformed_input);
    bad = j;
    bad[0]["kind"] = "fixed";
    CHECK(code_of([&] { cycle_from_json(bad, 2); }) == errc::malformed_input);
}

TEST_CASE("trace documents round-trip byte for byte") {
    Fan f = p2_fan();
    RationalVector point = rv({Rat(-1)});
    ChainLogMap chain = trace_chain(f, lv({1, 2}), point);
    Json j = trace_to_json(f, "p2", point, chain);
    require_exact(j);
    std::string text = dump_json(j);
    TraceDocument doc = trace_from_json(Json::parse(text));
    CHECK(doc.fan == f);
    CHECK(doc.fan_name == "p2");
    CHECK(doc.point == point);
    CHECK(doc.type == chain_type(chain));
    CHECK(dump_json(trace_to_json(doc.fan, doc.fan_name, doc.point, doc.chain, doc.notices)) ==
          text);

    // Stored derived fields must match what the chain actually derives to.
    Json bad = Json::parse(text);
    bad["type"] = "forged";
    CHECK(code_of([&] { trace_from_json(bad); }) == errc::malformed_input);
}

TEST_CASE("report documents round-trip byte for byte") {
    struct Case {
        Fan fan;
        const char* name;
        LatticeVector direction;
    };
    std::vector<Case> cases;
    cases.push_back({p2_fan(), "p2", lv({0, 1})});
    cases.push_back({wp112_fan(), "wp112", lv({0, -1})});     // rational tangencies
    cases.push_back({octahedron_fan(), "octa", lv({1, 0, 0})}); // null discrete data
    for (const auto& c : cases) {
        CAPTURE(c.name);
        StrataReport r = enumerate_strata(c.fan, c.direction, 3);
        Json j = report_to_json(c.fan, c.name, r);
        require_exact(j);
        std::string text = dump_json(j);
        ReportDocument doc = report_from_json(Json::parse(text));
        CHECK(doc.fan == c.fan);
        CHECK(doc.fan_name == c.name);
        CHECK(doc.report.entries.size() == r.entries.size());
        CHECK(doc.report.quotient == r.quotient);
        CHECK(dump_json(report_to_json(doc.fan, doc.fan_name, doc.report, doc.notices)) == text);
    }

    // The projection matrix is derived from the direction; a mismatch is
    // rejected.
    StrataReport r = enumerate_strata(p2_fan(), lv({0, 1}), 2);
    Json j = report_to_json(p2_fan(), "p2", r);
    j["projection"][0] = Json::array({0, 1});
    CHECK(code_of([&] { report_from_json(j); }) == errc::malformed_input);
}

TEST_CASE("monoid and chart documents carry the pipeline output") {
    Polytope simplex =
        Polytope::from_vertices(2, {lv({0, 0}), lv({1, 0}), lv({0, 1})});
    Json monoid = graded_monoid_to_json(cone_over_polytope_monoid(simplex), "simplex2");
    CHECK(monoid["schema"] == "chowfan-monoid");
    CHECK(monoid["rank"] == 3);
    CHECK(monoid["generators"].size() == 3);
    CHECK(monoid["degree_one_generated"] == true);
    for (const auto& g : monoid["generators"]) CHECK(g[2] == 1); // all at height 1

    Polytope square =
        Polytope::from_vertices(2, {lv({0, 0}), lv({1, 0}), lv({0, 1}), lv({1, 1})});
    Json charts = charts_to_json(square, "square");
    CHECK(charts["schema"] == "chowfan-charts");
    CHECK(charts["charts"].size() == 4);
    for (const auto& ch : charts["charts"]) CHECK(ch["generators"].size() == 2);
}

TEST_CASE("SVG rendering is exact until the final coordinate text") {
    Fan f = p2_fan();
    RationalVector point = rv({Rat(1, 3)});
    ChainLogMap chain = trace_chain(f, lv({0, 1}), point);
    Json doc = trace_to_json(f, "p2", point, chain);
    std::string svg = render_svg(doc);
    CHECK(svg.find("<svg xmlns") == 0);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
    CHECK(svg.find("(-1,-1)") != std::string::npos); // ray labels
    CHECK(svg.find(">0</text>") != std::string::npos);
    CHECK(svg.find(">∞</text>") != std::string::npos);
    // x = 1/3 at scale 280/3 is 280/9 = 31.11..., rounded only in the text.
    CHECK(svg.find("cx=\"31.11\"") != std::string::npos);
    CHECK(render_svg(doc) == svg); // deterministic

    std::size_t polygons = 0;
    for (std::size_t at = svg.find("<polygon"); at != std::string::npos;
         at = svg.find("<polygon", at + 1))
        ++polygons;
    CHECK(polygons == 3);

    // The trace over x' = 1 runs through (1,0) and (0,-1); with extent 3 the
    // scale is 280/3, so those vertices land at 93.33 pixels.
    ChainLogMap ruling = trace_chain(p1xp1_fan(), lv({1, 1}), rv({Rat(1)}));
    std::string ruling_svg =
        render_svg(trace_to_json(p1xp1_fan(), "p1xp1", rv({Rat(1)}), ruling));
    CHECK(ruling_svg.find("cx=\"93.33\" cy=\"0.00\"") != std::string::npos);
    CHECK(ruling_svg.find("cx=\"0.00\" cy=\"93.33\"") != std::string::npos);

    StrataReport r = enumerate_strata(p1xp1_fan(), lv({1, 1}), 2);
    Json report = report_to_json(p1xp1_fan(), "p1xp1", r);
    std::string overlay = render_svg(report);
    CHECK(overlay.find("stroke-dasharray") != std::string::npos);

    StrataReport r3 = enumerate_strata(octahedron_fan(), lv({1, 0, 0}), 1);
    Json rank3 = report_to_json(octahedron_fan(), "octa", r3);
    CHECK(code_of([&] { render_svg(rank3); }) == errc::rank_mismatch);
    CHECK(code_of([] { render_svg(Json::object()); }) == errc::malformed_input);
}

TEST_CASE("dump_json is canonical") {
    Json j;
    j["b"] = 1;
    j["a"] = 2;
    std::string text = dump_json(j);
    CHECK(text == "{\n  \"b\": 1,\n  \"a\": 2\n}\n"); // insertion order, 2-space indent
}
