#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chowfan/fan.hpp"
#include "chowfan/tropical.hpp"

namespace chowfan {

// Whether every maximal cone is unimodular (simplicial with generators that
// extend to a lattice basis).
bool is_smooth(const Fan& f);

// The discrete data of the two-marked-point genus-zero family swept out by
// the rank-one subtorus with cocharacter n0: contact orders at 0 and ∞ and
// the resulting degree vector β0 against the boundary divisors.
struct DiscreteData {
    LatticeVector direction; // n0
    ContactOrder contact_0;        // μ = n0
    ContactOrder contact_infinity; // μ = -n0
    std::map<LatticeVector, Rat> degree_vector; // ray -> β0 · D_ρ, every fan ray listed
};

// Tangency orders are the expansion coefficients of ±n0 over the rays of
// their minimal containing cones, which must be simplicial.  A ghost-stalk
// consistency check verifies that every nonzero generator of the anchor
// cone's sharp dual monoid has positive vanishing order ⟨e, n0⟩.
DiscreteData contact_orders(const Fan& f, const LatticeVector& n0);

// The line traced by one orbit of the subtorus, as a tropical chain: the
// breakpoints of t ↦ (minimal cone containing base + t·n0) become vertices,
// and the marker convention ties "0" to the +n0 end, "∞" to the -n0 end.
struct ChainLogMap {
    TropicalCurve curve;
    std::vector<Cone> vertex_cones; // minimal fan cone at each vertex position
    LatticeVector direction;        // n0
};

ChainLogMap trace_chain(const Fan& f, const LatticeVector& n0, const RationalVector& x_prime);

// Path + direction + weight constraints of a traced chain: the dual graph is
// a path, bounded edges are parallel to n0, the two unbounded directions are
// exactly ±n0, and all weights are 1 (primitive n0).
bool chain_shape_ok(const ChainLogMap& c);

std::string chain_type(const ChainLogMap& c);

// Boundary cycle of a chain: one term per component.  A vertex whose cone τ
// is a wall (dim d-1) maps onto the invariant curve V(τ); a vertex on a
// smaller cone sweeps a mobile orbit closure through its stratum, recorded
// symbolically with the (lex-normalized) sweep direction.
struct CycleTerm {
    bool mobile = false;
    Cone stratum;            // τ
    LatticeVector direction; // lex-normalized n0 for mobile terms, empty otherwise
    Int multiplicity;        // positive integer

    bool operator==(const CycleTerm& o) const {
        return mobile == o.mobile && stratum == o.stratum && direction == o.direction &&
               multiplicity == o.multiplicity;
    }
};

struct ToricCycle {
    std::vector<CycleTerm> terms; // canonical order, aggregated

    bool operator==(const ToricCycle& o) const { return terms == o.terms; }
};

ToricCycle cycle_of_chain(const ChainLogMap& c);

// Intersection degrees Σ aᵢ V(τᵢ)·D_ρ for every ray ρ of a smooth complete
// fan, via the wall relation u₁ + u₂ + Σ c_w·w = 0 over the two maximal
// cones adjacent to each wall.
std::map<LatticeVector, Rat> class_degrees(const Fan& f, const ToricCycle& cyc);

// The quotient fan in N' = N/Zn0: the common refinement of the projections
// of all cones, computed as hyperplane-arrangement chambers merged by their
// projected-cone membership signature.  sample_points and cone_types run
// parallel to fan.all_cones().
struct QuotientFanResult {
    QuotientLatticeMap projection;
    Fan fan;
    std::vector<RationalVector> sample_points;
    std::vector<std::string> cone_types;
};

QuotientFanResult quotient_fan(const Fan& f, const LatticeVector& n0);

// Monomial chart data of the non-degenerate map at a maximal cone σ ∋ n0:
// dual-monoid generators eᵢ with exponents cᵢ = ⟨eᵢ, n0⟩, i.e. the chart of
// t ↦ λ^{n0}(t).
struct MonomialChart {
    Cone cone;
    std::vector<LatticeVector> dual_generators;
    std::vector<Int> exponents;
};

std::vector<MonomialChart> reconstruct_nondegenerate(const Fan& f, const LatticeVector& n0);

// One stratum of the boundary correspondence: a quotient-fan cone together
// with the traced chain at a sample point of its relative interior, the
// chain's cycle, class degrees when available, and per-stratum check results.
struct StratumEntry {
    Cone cone;
    RationalVector sample;
    ChainLogMap chain;
    std::string type_key;
    ToricCycle cycle;
    bool has_degrees = false;
    std::map<LatticeVector, Rat> degrees;
    bool balanced = false;
    bool chain_shape = false;
    bool type_constant = false;
    bool conservation_applicable = false;
    bool conservation = false;
};

struct StrataReport {
    LatticeVector direction;
    QuotientLatticeMap projection;
    Fan quotient;
    bool smooth = false;
    std::optional<DiscreteData> discrete; // absent when an anchor is non-simplicial
    bool non_simplicial_anchor = false;
    std::size_t samples_per_cone = 0;
    std::vector<StratumEntry> entries; // parallel to quotient.all_cones()
    bool duplicate_types = false;      // two maximal cones share a chain type
};

StrataReport enumerate_strata(const Fan& f, const LatticeVector& n0,
                              std::size_t samples_per_cone = 5);

} // namespace chowfan
