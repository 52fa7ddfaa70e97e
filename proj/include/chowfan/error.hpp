#pragma once

#include <stdexcept>
#include <string>

namespace chowfan {

// Every failure mode the library reports deliberately, as opposed to a plain
// logic bug.  The code travels with the exception so callers (the CLI, tests)
// can branch without string matching.
enum class errc {
    zero_vector,          // primitive direction of the zero vector requested
    not_primitive,        // a direction that must be primitive has content > 1
    non_integral_direction, // edge displacement not a rational multiple of a lattice vector
    rank_mismatch,        // operands live in lattices of different rank
    rank_too_high,        // desk-scale routine asked to work above its rank limit
    bound_insufficient,   // caller-supplied enumeration bound below the safe bound
    not_in_cone,          // point outside the cone it was claimed to lie in
    not_strongly_convex,  // cone contains a line but lineality was not allowed
    overlapping_cones,    // two fan cones meet in a non-face
    non_primitive_ray,    // fan ray generator with content > 1
    duplicate_ray,        // fan lists the same ray twice
    not_full_dimensional, // polytope operation needs a full-dimensional polytope
    not_a_vertex,         // chart requested at a point that is not a vertex
    cone_not_in_fan,      // lookup of a cone that does not belong to the fan
    non_simplicial_anchor,// contact orders at a non-simplicial anchor cone
    direction_zero,       // subtorus direction n0 = 0
    not_complete,         // fan fails the completeness criterion
    merge_not_convex,     // refinement cells with equal signature fail to merge convexly
    not_smooth,           // intersection numbers requested on a singular fan
    mobile_term_present,  // class degrees of a cycle with a mobile component
    disconnected_graph,   // tropical curve whose underlying graph is not connected
    malformed_input,      // JSON document violates the schema
};

const char* errc_name(errc code);

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw error(code, what);
}

} // namespace chowfan
