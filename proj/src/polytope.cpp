#include "chowfan/polytope.hpp"

#include <algorithm>
#include <cassert>

#include "chowfan/error.hpp"

namespace chowfan {

Polytope Polytope::from_vertices(std::size_t rank, const std::vector<LatticeVector>& points) {
    if (points.empty()) fail(errc::malformed_input, "polytope needs at least one vertex");
    std::vector<LatticeVector> lifted;
    lifted.reserve(points.size());
    for (const auto& p : points) {
        if (p.size() != rank) fail(errc::rank_mismatch, "polytope vertex size mismatch");
        LatticeVector h = p;
        h.emplace_back(1);
        lifted.push_back(std::move(h));
    }
    Polytope q;
    q.rank_ = rank;
    // The lifted points all sit at height 1, so the cone over them is pointed
    // and its extreme rays are exactly the lifts of the extreme points.
    q.homogenization_ = Cone::from_rays(rank + 1, lifted);
    q.full_dimensional_ = q.homogenization_.dim() == rank + 1;
    for (const auto& g : q.homogenization_.generators()) {
        assert(g.back() == 1);
        q.vertices_.emplace_back(g.begin(), g.end() - 1);
    }
    std::sort(q.vertices_.begin(), q.vertices_.end());
    return q;
}

bool Polytope::contains(const RationalVector& p) const {
    if (p.size() != rank_) fail(errc::rank_mismatch, "polytope contains: size mismatch");
    RationalVector h = p;
    h.emplace_back(1);
    return homogenization_.contains(h);
}

std::vector<LatticeVector> lattice_points(const Polytope& q) {
    const std::size_t n = q.rank();
    std::vector<Int> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = q.vertices().front()[i];
        hi[i] = q.vertices().front()[i];
        for (const auto& v : q.vertices()) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    }
    std::vector<LatticeVector> out;
    LatticeVector x(n);
    auto sweep = [&](auto&& self, std::size_t coord) -> void {
        if (coord == n) {
            if (q.contains(to_rational(x))) out.push_back(x);
            return;
        }
        for (Int v = lo[coord]; v <= hi[coord]; ++v) {
            x[coord] = v;
            self(self, coord + 1);
        }
    };
    sweep(sweep, 0);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace chowfan
