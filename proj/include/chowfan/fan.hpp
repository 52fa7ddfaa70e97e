#pragma once

#include <vector>

#include "chowfan/cone.hpp"
#include "chowfan/monoid.hpp"
#include "chowfan/polytope.hpp"

namespace chowfan {

// Finite fan of strongly convex rational cones, validated on construction:
// every pairwise intersection must be a face of both cones.  Rays, maximal
// cones, and the full face list are stored in canonical sorted order, so two
// fans describing the same collection compare equal structurally.
class Fan {
public:
    Fan() = default;

    // Builds a validated fan from the given cones.  Cones contained in
    // another listed cone are dropped (they are faces, not maximal).
    static Fan from_cones(std::size_t rank, const std::vector<Cone>& cones);

    // Document form: explicit primitive rays plus maximal cones as ray-index
    // sets.  Rejects imprimitive or duplicate rays and out-of-range indices.
    static Fan from_ray_indices(std::size_t rank, const std::vector<LatticeVector>& rays,
                                const std::vector<std::vector<std::size_t>>& cones);

    std::size_t rank() const { return rank_; }
    const std::vector<LatticeVector>& rays() const { return rays_; }
    const std::vector<Cone>& maximal_cones() const { return maximal_; }
    // Ray indices (into rays()) of each maximal cone's generators.
    const std::vector<std::vector<std::size_t>>& maximal_cone_rays() const { return cone_rays_; }
    // Complete = the maximal cones cover the whole space, verified by the
    // facet-pairing criterion (every wall is shared by exactly two cones).
    bool is_complete() const { return complete_; }
    // Every face of every maximal cone, deduplicated, sorted by dimension.
    const std::vector<Cone>& all_cones() const { return all_cones_; }

    bool contains_cone(const Cone& c) const;
    // The unique cone of the fan with p in its relative interior; NotInCone
    // if p lies outside the support.
    const Cone& minimal_cone_containing(const RationalVector& p) const;

    bool operator==(const Fan& o) const { return rank_ == o.rank_ && maximal_ == o.maximal_; }
    bool operator!=(const Fan& o) const { return !(*this == o); }

private:
    std::size_t rank_ = 0;
    bool complete_ = false;
    std::vector<LatticeVector> rays_;
    std::vector<Cone> maximal_;
    std::vector<std::vector<std::size_t>> cone_rays_;
    std::vector<Cone> all_cones_;
};

// Monoid of lattice points of the cone over a polytope at height 1; the
// degree of an element is its last coordinate.
struct GradedMonoid {
    AffineMonoid monoid;
    bool degree_one_generated = false;
};

// Sharp monoid attached to the torus orbit indexed by a cone tau: the dual
// monoid modulo its units tau^perp ∩ M, presented in the quotient lattice
// M/(tau^perp ∩ M) of rank dim(tau).
struct GhostStalk {
    Cone cone;
    AffineMonoid monoid;
    std::vector<LatticeVector> units_lattice;
};

// Complete fan whose maximal cones are the vertex normal cones of q.
Fan normal_fan(const Polytope& q);

// Generators of the monoid of lattice points of cone(q - v) at a vertex v.
AffineMonoid vertex_chart_monoid(const Polytope& q, const LatticeVector& v);

GradedMonoid cone_over_polytope_monoid(const Polytope& q);

GhostStalk ghost_stalk(const Fan& f, const Cone& tau);

} // namespace chowfan
