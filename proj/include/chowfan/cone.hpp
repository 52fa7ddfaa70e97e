#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chowfan/lattice.hpp"

namespace chowfan {

// Hermite normal form of the lattice spanned by the given rows: the canonical
// basis used everywhere a sublattice must not depend on how it was presented.
// Rows come out with increasing pivot columns, positive pivots, and entries
// above each pivot reduced into [0, pivot).
std::vector<LatticeVector> hermite_basis(const std::vector<LatticeVector>& rows, std::size_t ambient_rank);

// Closed interval of rational t-values, possibly unbounded on either side.
struct RatInterval {
    bool empty = true;
    std::optional<Rat> lo; // nullopt = -infinity
    std::optional<Rat> hi; // nullopt = +infinity

    static RatInterval whole() { return {false, std::nullopt, std::nullopt}; }
    static RatInterval none() { return {}; }

    bool contains(const Rat& t) const {
        if (empty) return false;
        if (lo && t < *lo) return false;
        if (hi && t > *hi) return false;
        return true;
    }
    bool is_point() const { return !empty && lo && hi && *lo == *hi; }
    bool bounded() const { return !empty && lo && hi; }
};

// Rational polyhedral cone in a fixed lattice, stored in a canonical form that
// is intrinsic to the cone as a set: primitive extreme rays of the pointed
// part (sorted), Hermite basis of the lineality space, derived facet normals
// and span equations.  Generator and facet descriptions are cross-checked on
// construction, so an instance that exists is consistent.
class Cone {
public:
    Cone() = default;

    // Cone generated by the given rays.  Lineality (a line contained in the
    // cone) is rejected unless allowed explicitly.
    static Cone from_rays(std::size_t rank, const std::vector<LatticeVector>& rays,
                          bool allow_lineality = false);

    // Cone cut out by inequalities <a, x> >= 0 and equations <b, x> = 0.
    static Cone from_inequalities(std::size_t rank, const std::vector<LatticeVector>& ineqs,
                                  const std::vector<LatticeVector>& eqs,
                                  bool allow_lineality = false);

    static Cone zero(std::size_t rank) { return from_rays(rank, {}); }

    std::size_t rank() const { return rank_; }
    std::size_t dim() const { return dim_; }
    bool is_pointed() const { return lineality_.empty(); }
    bool is_full_dimensional() const { return dim_ == rank_; }
    bool is_zero() const { return dim_ == 0; }
    // Generators span the cone together with +/- the lineality basis.
    const std::vector<LatticeVector>& generators() const { return generators_; }
    const std::vector<LatticeVector>& lineality() const { return lineality_; }
    const std::vector<LatticeVector>& facets() const { return facets_; }
    const std::vector<LatticeVector>& span_equations() const { return span_equations_; }

    bool contains(const LatticeVector& p) const;
    bool contains(const RationalVector& p) const;
    bool contains_relint(const RationalVector& p) const;
    bool contains_cone(const Cone& other) const;

    // A lattice point in the relative interior (the origin for the zero cone).
    LatticeVector relint_point() const;

    // Deterministic one-line serialization; equal cones produce equal keys.
    std::string canonical_key() const;

    bool operator==(const Cone& o) const {
        return rank_ == o.rank_ && generators_ == o.generators_ && lineality_ == o.lineality_;
    }
    bool operator!=(const Cone& o) const { return !(*this == o); }
    bool operator<(const Cone& o) const; // arbitrary strict order for sorting

private:
    std::size_t rank_ = 0;
    std::size_t dim_ = 0;
    std::vector<LatticeVector> generators_;
    std::vector<LatticeVector> lineality_;
    std::vector<LatticeVector> facets_;
    std::vector<LatticeVector> span_equations_;

    static Cone assemble(std::size_t rank, std::vector<LatticeVector> rays,
                         std::vector<LatticeVector> lineality, bool allow_lineality);
};

// Dual cone {m : <m, x> >= 0 for all x in c}; has lineality whenever c is not
// full-dimensional (always flagged as allowed).
Cone dual_cone(const Cone& c);

Cone intersect(const Cone& a, const Cone& b);

// The unique face of c containing p in its relative interior.
Cone minimal_face_containing(const Cone& c, const RationalVector& p);

// All faces of c (including c itself and its minimal face), sorted by
// (dim, canonical order).
std::vector<Cone> all_faces(const Cone& c);

// Exact parameter interval {t : base + t * dir lies in c}.
RatInterval segment_in_cone(const Cone& c, const RationalVector& base, const LatticeVector& dir);

} // namespace chowfan
