#pragma once

#include <vector>

#include "chowfan/cone.hpp"

namespace chowfan {

// Lattice polytope, stored canonically by its extreme points.  All convexity
// questions are delegated to the cone over the polytope placed at height 1,
// so the polytope inherits the exactness of the cone machinery.
class Polytope {
public:
    Polytope() = default;

    // Convex hull of the given lattice points; non-extreme points are
    // discarded during canonicalization.
    static Polytope from_vertices(std::size_t rank, const std::vector<LatticeVector>& points);

    std::size_t rank() const { return rank_; }
    const std::vector<LatticeVector>& vertices() const { return vertices_; }
    bool is_full_dimensional() const { return full_dimensional_; }

    // Cone over the polytope embedded at height 1 in rank+1.
    const Cone& homogenization() const { return homogenization_; }

    bool contains(const RationalVector& p) const;

    bool operator==(const Polytope& o) const {
        return rank_ == o.rank_ && vertices_ == o.vertices_;
    }
    bool operator!=(const Polytope& o) const { return !(*this == o); }

private:
    std::size_t rank_ = 0;
    bool full_dimensional_ = false;
    std::vector<LatticeVector> vertices_;
    Cone homogenization_;
};

// All lattice points of q, sorted lexicographically.
std::vector<LatticeVector> lattice_points(const Polytope& q);

} // namespace chowfan
