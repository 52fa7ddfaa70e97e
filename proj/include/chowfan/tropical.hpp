#pragma once

#include <map>
#include <string>
#include <vector>

#include "chowfan/cone.hpp"

namespace chowfan {

// Contact order of a marked point: the primitive-direction datum μ together
// with the orders of tangency against the boundary divisors, expanded over
// the rays of the minimal cone of the fan containing μ (simplicial case).
struct ContactOrder {
    LatticeVector direction;              // μ; zero for a trivial contact
    std::map<LatticeVector, Rat> tangency; // ray generator -> order (rays not listed pair to 0)
    Cone anchor_cone;                      // minimal cone containing μ
};

// Genus-zero tropical curve: a connected graph with vertex positions in N_Q,
// weighted integral edge directions, and rational bounded-edge lengths.
// Every edge stores μ = ω·u with u primitive; flags point away from the
// vertex, so the balancing sum at v adds μ for each outgoing flag.
struct TropicalVertex {
    RationalVector position;
};

struct BoundedEdge {
    std::size_t tail = 0;   // vertex indices
    std::size_t head = 0;
    Int weight;             // ω >= 0; 0 only for contracted edges (μ = 0)
    LatticeVector direction; // μ = ω·u, points from tail to head
    Rat length;              // e > 0; position(head) − position(tail) = e·μ
};

struct UnboundedEdge {
    std::size_t vertex = 0;
    Int weight;
    LatticeVector direction; // μ = ω·u
    std::string marker;      // marked-point label, may be empty
};

struct TropicalCurve {
    std::size_t rank = 0;
    std::vector<TropicalVertex> vertices;
    std::vector<BoundedEdge> bounded_edges;
    std::vector<UnboundedEdge> unbounded_edges;
};

// Structural validity: index ranges, position/edge compatibility
// (head − tail = length·direction with content(direction) = weight), the
// contracted-edge and loop rules, and connectedness.
void validate_curve(const TropicalCurve& t);

// Balancing defect ε_v at every vertex (zero vector everywhere iff balanced).
std::vector<LatticeVector> check_balancing(const TropicalCurve& t);

bool is_balanced(const TropicalCurve& t);

// Curve of a map from the dense torus: one vertex at the origin and one
// unbounded edge per contact (trivial contacts become contracted edges).
// markers, when given, must be parallel to contacts; two contacts default to
// markers "0", "∞".
TropicalCurve trop_nondegenerate(std::size_t rank, const std::vector<ContactOrder>& contacts,
                                 std::vector<std::string> markers = {});

// Curve over the standard log point: positions and edge lengths are given,
// directions and weights are derived from the position differences.  An edge
// whose difference quotient is non-integral gets its length rescaled to make
// the direction primitive (weight 1) — the canonical normalization.
struct LogPointEdge {
    std::size_t tail = 0;
    std::size_t head = 0;
    Rat length; // > 0
};

struct EndContact {
    std::size_t vertex = 0;
    ContactOrder contact;
    std::string marker;
};

TropicalCurve trop_standard_log_point(std::size_t rank,
                                      const std::vector<RationalVector>& positions,
                                      const std::vector<LogPointEdge>& edges,
                                      const std::vector<EndContact>& contacts);

// Smallest positive integer λ with all λ·length integral — the rescaling
// that realizes the curve over the standard log point with integer lengths.
Int minimal_length_rescaling(const TropicalCurve& t);

// Canonical combinatorial-type key of a chain (path) curve: the sequence of
// per-vertex minimal fan cones with edge weights and unbounded directions,
// normalized under reversal.  Positions and lengths are excluded — they are
// the moduli within a stratum.  vertex_cones runs parallel to t.vertices.
std::string canonical_type(const TropicalCurve& t, const std::vector<Cone>& vertex_cones);

} // namespace chowfan
