#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "chowfan/chow.hpp"

namespace chowfan {

// All documents use insertion-ordered JSON so serialization is deterministic
// field for field; rationals are emitted as bare integers when integral and
// as "p/q" strings (lowest terms) otherwise — never as floating point.
using Json = nlohmann::ordered_json;

Json to_json(const Int& n);
Json to_json(const Rat& q);
Json to_json(const LatticeVector& v);
Json to_json(const RationalVector& v);

// Parsers reject anything outside the schema (including floating-point
// numbers) with MalformedInput.
Int int_from_json(const Json& j);
Rat rat_from_json(const Json& j);
LatticeVector lattice_vector_from_json(const Json& j);
RationalVector rational_vector_from_json(const Json& j);

// Fan document: {rank, rays, cones (maximal, as ray indices), name?}.
struct FanDocument {
    Fan fan;
    std::string name;
};

Json fan_to_json(const Fan& f, const std::string& name = {});
FanDocument fan_from_json(const Json& j);

// Polytope document: {rank, vertices, name?}.
struct PolytopeDocument {
    Polytope polytope;
    std::string name;
};

Json polytope_to_json(const Polytope& q, const std::string& name = {});
PolytopeDocument polytope_from_json(const Json& j);

// Chain serialization carries positions, vertex cones (as generator lists),
// and both edge lists; parsing re-validates the curve axioms.
Json chain_to_json(const ChainLogMap& c);
ChainLogMap chain_from_json(const Json& j);

Json cycle_to_json(const ToricCycle& c);
ToricCycle cycle_from_json(const Json& j, std::size_t rank);

// Trace document ("chowfan-trace"): one chain with its derived cycle, type
// key, and check results, plus the input fan so the document is
// self-contained (renderable).
struct TraceDocument {
    Fan fan;
    std::string fan_name;
    RationalVector point;
    ChainLogMap chain;
    ToricCycle cycle;
    std::string type;
    std::vector<std::string> notices;
};

Json trace_to_json(const Fan& f, const std::string& fan_name, const RationalVector& point,
                   const ChainLogMap& chain, const std::vector<std::string>& notices = {});
TraceDocument trace_from_json(const Json& j);

// Strata report document ("chowfan-report").
struct ReportDocument {
    Fan fan;
    std::string fan_name;
    StrataReport report;
    std::vector<std::string> notices;
};

Json report_to_json(const Fan& input, const std::string& fan_name, const StrataReport& r,
                    const std::vector<std::string>& notices = {});
ReportDocument report_from_json(const Json& j);

// Outputs of the polytope pipeline ("chowfan-monoid", "chowfan-charts").
Json graded_monoid_to_json(const GradedMonoid& m, const std::string& name = {});
Json charts_to_json(const Polytope& q, const std::string& name = {});

// Deterministic SVG of a rank-2 report or trace document: fan cones as
// shaded sectors, rays with labels, traced lines with chain vertices.
// Rationals are rounded only when the final coordinate text is written.
std::string render_svg(const Json& document);

// Canonical dump: two-space indentation plus trailing newline.
std::string dump_json(const Json& j);

} // namespace chowfan
