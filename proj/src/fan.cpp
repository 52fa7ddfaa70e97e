#include "chowfan/fan.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#include "chowfan/error.hpp"

namespace chowfan {

Fan Fan::from_cones(std::size_t rank, const std::vector<Cone>& cones) {
    std::vector<Cone> maximal;
    for (const auto& c : cones) {
        if (c.rank() != rank) fail(errc::rank_mismatch, "fan cone has wrong ambient rank");
        if (!c.is_pointed()) fail(errc::not_strongly_convex, "fan cone contains a line");
        maximal.push_back(c);
    }
    std::sort(maximal.begin(), maximal.end());
    maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());
    // Drop cones that are faces of another listed cone.
    std::vector<Cone> kept;
    for (const auto& c : maximal) {
        bool covered = false;
        for (const auto& d : maximal)
            if (!(d == c) && d.contains_cone(c)) covered = true;
        if (!covered) kept.push_back(c);
    }
    maximal = std::move(kept);

    // Pairwise intersections must be common faces.
    std::vector<std::set<Cone>> face_sets;
    face_sets.reserve(maximal.size());
    for (const auto& c : maximal) {
        auto fs = all_faces(c);
        face_sets.emplace_back(fs.begin(), fs.end());
    }
    for (std::size_t i = 0; i < maximal.size(); ++i)
        for (std::size_t j = i + 1; j < maximal.size(); ++j) {
            Cone inter = intersect(maximal[i], maximal[j]);
            if (face_sets[i].count(inter) == 0 || face_sets[j].count(inter) == 0)
                fail(errc::overlapping_cones,
                     "cones " + maximal[i].canonical_key() + " and " +
                         maximal[j].canonical_key() + " do not meet in a common face");
        }

    Fan f;
    f.rank_ = rank;
    f.maximal_ = std::move(maximal);

    std::set<Cone> all;
    for (const auto& fs : face_sets) all.insert(fs.begin(), fs.end());
    f.all_cones_.assign(all.begin(), all.end());

    std::set<LatticeVector> rays;
    for (const auto& c : f.maximal_) rays.insert(c.generators().begin(), c.generators().end());
    f.rays_.assign(rays.begin(), rays.end());
    for (const auto& c : f.maximal_) {
        std::vector<std::size_t> idx;
        for (const auto& g : c.generators()) {
            auto it = std::lower_bound(f.rays_.begin(), f.rays_.end(), g);
            idx.push_back(static_cast<std::size_t>(it - f.rays_.begin()));
        }
        f.cone_rays_.push_back(std::move(idx));
    }

    // Completeness by facet pairing: all maximal cones full-dimensional and
    // every wall shared by exactly two of them.
    if (rank == 0) {
        f.complete_ = !f.maximal_.empty();
    } else {
        bool complete = !f.maximal_.empty();
        for (const auto& c : f.maximal_)
            if (!c.is_full_dimensional()) complete = false;
        if (complete) {
            std::map<Cone, int> wall_count;
            for (std::size_t i = 0; i < f.maximal_.size(); ++i)
                for (const auto& face : face_sets[i])
                    if (face.dim() + 1 == rank) ++wall_count[face];
            for (const auto& [wall, count] : wall_count)
                if (count != 2) complete = false;
        }
        f.complete_ = complete;
    }
    return f;
}

Fan Fan::from_ray_indices(std::size_t rank, const std::vector<LatticeVector>& rays,
                          const std::vector<std::vector<std::size_t>>& cones) {
    std::set<LatticeVector> seen;
    for (const auto& r : rays) {
        if (r.size() != rank) fail(errc::rank_mismatch, "ray has wrong ambient rank");
        if (is_zero(r)) fail(errc::zero_vector, "zero vector listed as a ray");
        if (primitive_vector(r).first != r)
            fail(errc::non_primitive_ray, "ray " + to_string(r) + " is not primitive");
        if (!seen.insert(r).second)
            fail(errc::duplicate_ray, "ray " + to_string(r) + " listed twice");
    }
    std::vector<Cone> cs;
    for (const auto& idx : cones) {
        std::vector<LatticeVector> gens;
        for (std::size_t i : idx) {
            if (i >= rays.size()) fail(errc::malformed_input, "cone ray index out of range");
            gens.push_back(rays[i]);
        }
        cs.push_back(Cone::from_rays(rank, gens));
    }
    Fan f = from_cones(rank, cs);
    // Every listed ray must actually be a ray of the fan (an extreme ray of
    // some maximal cone); a non-extreme listed ray signals a bad document.
    for (const auto& r : rays) {
        bool found = std::binary_search(f.rays_.begin(), f.rays_.end(), r);
        if (!found)
            fail(errc::malformed_input,
                 "listed ray " + to_string(r) + " is not an extreme ray of any cone");
    }
    return f;
}

bool Fan::contains_cone(const Cone& c) const {
    return std::binary_search(all_cones_.begin(), all_cones_.end(), c);
}

const Cone& Fan::minimal_cone_containing(const RationalVector& p) const {
    for (const auto& c : maximal_) {
        if (!c.contains(p)) continue;
        Cone face = minimal_face_containing(c, p);
        auto it = std::lower_bound(all_cones_.begin(), all_cones_.end(), face);
        assert(it != all_cones_.end() && *it == face);
        return *it;
    }
    fail(errc::not_in_cone, "point " + to_string(p) + " is outside the fan's support");
}

Fan normal_fan(const Polytope& q) {
    if (!q.is_full_dimensional())
        fail(errc::not_full_dimensional, "normal fan needs a full-dimensional polytope");
    std::vector<Cone> cones;
    for (const auto& v : q.vertices()) {
        std::vector<LatticeVector> deltas;
        for (const auto& w : q.vertices()) deltas.push_back(sub(w, v));
        cones.push_back(dual_cone(Cone::from_rays(q.rank(), deltas)));
    }
    Fan f = Fan::from_cones(q.rank(), cones);
    assert(f.is_complete());
    return f;
}

AffineMonoid vertex_chart_monoid(const Polytope& q, const LatticeVector& v) {
    const auto& vs = q.vertices();
    if (!std::binary_search(vs.begin(), vs.end(), v))
        fail(errc::not_a_vertex, to_string(v) + " is not a vertex of the polytope");
    std::vector<LatticeVector> deltas;
    for (const auto& w : vs) deltas.push_back(sub(w, v));
    return monoid_generators(Cone::from_rays(q.rank(), deltas));
}

GradedMonoid cone_over_polytope_monoid(const Polytope& q) {
    if (!q.is_full_dimensional())
        fail(errc::not_full_dimensional, "graded monoid needs a full-dimensional polytope");
    GradedMonoid g;
    g.monoid = monoid_generators(q.homogenization());
    g.degree_one_generated = true;
    for (const auto& e : g.monoid.generators) {
        assert(e.back() >= 1); // heights are positive off the origin
        if (e.back() != 1) g.degree_one_generated = false;
    }
    return g;
}

GhostStalk ghost_stalk(const Fan& f, const Cone& tau) {
    if (!f.contains_cone(tau)) fail(errc::cone_not_in_fan, "ghost_stalk: cone not in fan");
    GhostStalk gs;
    gs.cone = tau;
    Cone dual = dual_cone(tau);
    gs.units_lattice = dual.lineality(); // tau^perp ∩ M, Hermite basis
    assert(gs.units_lattice.size() == f.rank() - tau.dim());
    if (tau.dim() == 0) {
        gs.monoid.rank = 0; // trivial monoid at the dense-torus orbit
        return gs;
    }
    if (tau.is_full_dimensional()) {
        gs.monoid = monoid_generators(dual);
        return gs;
    }
    auto sq = sublattice_quotient(gs.units_lattice, f.rank());
    std::vector<LatticeVector> image;
    for (const auto& g : dual.generators()) image.push_back(sq.project(g));
    gs.monoid = monoid_generators(Cone::from_rays(tau.dim(), image));
    return gs;
}

} // namespace chowfan
