#include "chowfan/error.hpp"

namespace chowfan {

const char* errc_name(errc code) {
    switch (code) {
        case errc::zero_vector: return "ZeroVector";
        case errc::not_primitive: return "NotPrimitive";
        case errc::non_integral_direction: return "NonIntegralDirection";
        case errc::rank_mismatch: return "RankMismatch";
        case errc::rank_too_high: return "RankTooHigh";
        case errc::bound_insufficient: return "BoundInsufficient";
        case errc::not_in_cone: return "NotInCone";
        case errc::not_strongly_convex: return "NotStronglyConvex";
        case errc::overlapping_cones: return "OverlappingCones";
        case errc::non_primitive_ray: return "NonPrimitiveRay";
        case errc::duplicate_ray: return "DuplicateRay";
        case errc::not_full_dimensional: return "NotFullDimensional";
        case errc::not_a_vertex: return "NotAVertex";
        case errc::cone_not_in_fan: return "ConeNotInFan";
        case errc::non_simplicial_anchor: return "NonSimplicialAnchor";
        case errc::direction_zero: return "DirectionZero";
        case errc::not_complete: return "NotComplete";
        case errc::merge_not_convex: return "MergeNotConvex";
        case errc::not_smooth: return "NotSmooth";
        case errc::mobile_term_present: return "MobileTermPresent";
        case errc::disconnected_graph: return "DisconnectedGraph";
        case errc::malformed_input: return "MalformedInput";
    }
    return "UnknownError";
}

} // namespace chowfan
