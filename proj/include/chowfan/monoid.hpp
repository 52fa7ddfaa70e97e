#pragma once

#include <vector>

#include "chowfan/cone.hpp"

namespace chowfan {

// Finitely generated saturated affine monoid — the lattice points of a
// strongly convex rational cone — presented by its irreducible elements
// (Hilbert basis), sorted lexicographically.
struct AffineMonoid {
    std::size_t rank = 0;
    std::vector<LatticeVector> generators;

    bool operator==(const AffineMonoid& o) const {
        return rank == o.rank && generators == o.generators;
    }
    bool operator!=(const AffineMonoid& o) const { return !(*this == o); }
};

// Hilbert basis of c intersected with the lattice, for strongly convex c of
// ambient rank <= 3.  A sufficient enumeration bound is derived from the
// cone itself; degree_bound = 0 accepts the derived bound, while a positive
// value below it fails loudly rather than silently truncating.  Every
// enumerated lattice point is verified to be a sum of the returned
// generators.
AffineMonoid monoid_generators(const Cone& c, const Int& degree_bound = Int(0));

} // namespace chowfan
