#include "chowfan/monoid.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#include "chowfan/error.hpp"

namespace chowfan {

namespace {

// Floor of a nonnegative rational.
Int rat_floor(const Rat& r) {
    Int q = numerator(r) / denominator(r);
    if (numerator(r) % denominator(r) != 0 && numerator(r) < 0) --q;
    return q;
}

} // namespace

AffineMonoid monoid_generators(const Cone& c, const Int& degree_bound) {
    if (c.rank() > 3) fail(errc::rank_too_high, "monoid_generators: ambient rank exceeds 3");
    if (!c.is_pointed()) fail(errc::not_strongly_convex, "monoid_generators: cone has lineality");
    AffineMonoid out;
    out.rank = c.rank();
    if (c.is_zero()) return out;

    // w = sum of facet normals is strictly positive on c minus the origin:
    // a point where it vanishes lies on every facet, i.e. in the minimal
    // face, which is {0} for a pointed cone.
    const std::size_t n = c.rank();
    LatticeVector w(n, Int(0));
    for (const auto& f : c.facets()) w = add(w, f);

    // Every irreducible element x satisfies <w, x> <= B: writing x as a
    // nonnegative rational combination of the extreme rays, a coefficient
    // >= 1 on some ray g would split off g as a summand, so all coefficients
    // are < 1 unless x is a ray generator itself.
    Int bound = 0;
    for (const auto& g : c.generators()) bound += pair(w, g);
    assert(bound > 0);
    if (degree_bound != 0 && degree_bound < bound)
        fail(errc::bound_insufficient,
             "monoid_generators: requested bound " + degree_bound.str() +
                 " is below the derived sufficient bound " + bound.str());

    // Bounding box: coefficients along ray g are at most bound / <w, g>.
    std::vector<Int> box(n, Int(0));
    for (std::size_t i = 0; i < n; ++i) {
        Rat extent(0);
        for (const auto& g : c.generators())
            extent += Rat(bound, pair(w, g)) * Rat(abs(g[i]));
        box[i] = rat_floor(extent);
    }

    // Enumerate the lattice points of c with <w, x> <= bound.
    std::vector<LatticeVector> points;
    LatticeVector x(n);
    auto sweep = [&](auto&& self, std::size_t coord) -> void {
        if (coord == n) {
            if (!is_zero(x) && pair(w, x) <= bound && c.contains(x)) points.push_back(x);
            return;
        }
        for (Int v = -box[coord]; v <= box[coord]; ++v) {
            x[coord] = v;
            self(self, coord + 1);
        }
    };
    sweep(sweep, 0);

    std::sort(points.begin(), points.end(), [&](const LatticeVector& a, const LatticeVector& b) {
        const Int wa = pair(w, a), wb = pair(w, b);
        if (wa != wb) return wa < wb;
        return a < b;
    });
    std::set<LatticeVector> in_set(points.begin(), points.end());

    // x is reducible iff x = y + z with y, z nonzero monoid elements; both
    // summands then have strictly smaller w-value, so they were enumerated.
    std::vector<LatticeVector> gens;
    for (const auto& p : points) {
        bool reducible = false;
        for (const auto& y : points) {
            if (pair(w, y) >= pair(w, p)) break;
            if (in_set.count(sub(p, y)) != 0) {
                reducible = true;
                break;
            }
        }
        if (!reducible) gens.push_back(p);
    }

    // Verify sufficiency: every enumerated point decomposes over the basis.
    std::set<LatticeVector> reachable(gens.begin(), gens.end());
    for (const auto& p : points) {
        if (reachable.count(p) != 0) continue;
        bool ok = false;
        for (const auto& g : gens) {
            if (pair(w, g) >= pair(w, p)) break; // gens appear in the sorted order of points
            if (reachable.count(sub(p, g)) != 0) {
                ok = true;
                break;
            }
        }
        assert(ok && "Hilbert basis property violated");
        if (ok) reachable.insert(p);
    }

    std::sort(gens.begin(), gens.end());
    out.generators = std::move(gens);
    return out;
}

} // namespace chowfan
