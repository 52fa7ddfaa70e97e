#include <algorithm>
#include <random>
#include <set>

#include "chowfan/cone.hpp"
#include "chowfan/error.hpp"
#include "doctest.h"

using namespace chowfan;

namespace {

LatticeVector lv(std::initializer_list<long> xs) {
    LatticeVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

RationalVector rv(std::initializer_list<Rat> xs) { return RationalVector(xs); }

std::vector<LatticeVector> rays_of(const Cone& c) { return c.generators(); }

} // namespace

TEST_CASE("hermite basis is canonical for a sublattice") {
    // Two presentations of the same rank-2 sublattice of Z^3.
    auto a = hermite_basis({lv({2, 0, 1}), lv({0, 1, 1})}, 3);
    auto b = hermite_basis({lv({2, 1, 2}), lv({-2, 1, 0}), lv({0, 1, 1})}, 3);
    CHECK(a == b);
    // A saturated presentation stays itself.
    auto c = hermite_basis({lv({1, 0, 0}), lv({0, 1, 0})}, 3);
    CHECK(c == std::vector<LatticeVector>{lv({1, 0, 0}), lv({0, 1, 0})});
    // Zero rows vanish.
    CHECK(hermite_basis({lv({0, 0})}, 2).empty());
}

TEST_CASE("first quadrant canonical form") {
    Cone q = Cone::from_rays(2, {lv({0, 1}), lv({1, 0})});
    CHECK(q.rank() == 2);
    CHECK(q.dim() == 2);
    CHECK(q.is_pointed());
    CHECK(q.is_full_dimensional());
    CHECK(rays_of(q) == std::vector<LatticeVector>{lv({0, 1}), lv({1, 0})});
    CHECK(q.facets() == std::vector<LatticeVector>{lv({0, 1}), lv({1, 0})});
    CHECK(q.span_equations().empty());

    // Redundant and non-primitive generators canonicalize away.
    Cone q2 = Cone::from_rays(2, {lv({2, 0}), lv({1, 1}), lv({0, 3}), lv({1, 0})});
    CHECK(q == q2);
    CHECK(q.canonical_key() == q2.canonical_key());
}

TEST_CASE("dual cone examples") {
    Cone q = Cone::from_rays(2, {lv({1, 0}), lv({0, 1})});
    CHECK(dual_cone(q) == q); // first quadrant is self-dual

    Cone c = Cone::from_rays(2, {lv({1, 0}), lv({1, 2})});
    Cone d = dual_cone(c);
    CHECK(rays_of(d) == std::vector<LatticeVector>{lv({0, 1}), lv({2, -1})});
    for (const auto& m : rays_of(d))
        for (const auto& g : rays_of(c)) CHECK(pair(m, g) >= 0);

    Cone z = Cone::zero(2);
    Cone dz = dual_cone(z);
    CHECK(dz.dim() == 2);
    CHECK_FALSE(dz.is_pointed());
    CHECK(dz.lineality() == std::vector<LatticeVector>{lv({1, 0}), lv({0, 1})});
    CHECK(dz.generators().empty());
    CHECK(dz.facets().empty());
}

TEST_CASE("lineality handling") {
    CHECK_THROWS_AS(Cone::from_rays(2, {lv({1, 0}), lv({-1, 0})}), const error&);
    try {
        Cone::from_rays(2, {lv({1, 0}), lv({-1, 0})});
    } catch (const error& e) {
        CHECK(e.code() == errc::not_strongly_convex);
    }

    Cone h = Cone::from_rays(2, {lv({1, 0}), lv({-1, 0}), lv({0, 1})}, true);
    CHECK(h.dim() == 2);
    CHECK(h.lineality() == std::vector<LatticeVector>{lv({1, 0})});
    CHECK(h.generators() == std::vector<LatticeVector>{lv({0, 1})});
    CHECK(h.facets() == std::vector<LatticeVector>{lv({0, 1})});

    // Same half-plane from inequalities.
    Cone h2 = Cone::from_inequalities(2, {lv({0, 1})}, {}, true);
    CHECK(h == h2);
    CHECK(h.canonical_key() == h2.canonical_key());

    // Canonical ray representative is independent of presentation mod lineality.
    Cone h3 = Cone::from_rays(2, {lv({1, 0}), lv({-1, 0}), lv({5, 1})}, true);
    CHECK(h == h3);
}

TEST_CASE("from_inequalities with implicit equalities") {
    // x >= 0, -x >= 0 forces x = 0: the y-axis ray system.
    Cone c = Cone::from_inequalities(2, {lv({1, 0}), lv({-1, 0}), lv({0, 1})}, {});
    CHECK(c.dim() == 1);
    CHECK(c.generators() == std::vector<LatticeVector>{lv({0, 1})});
    CHECK(c.span_equations() == std::vector<LatticeVector>{lv({1, 0})});

    // Equations restrict to a sublattice; generator must be primitive in Z^2.
    Cone d = Cone::from_inequalities(2, {lv({1, 0})}, {lv({1, -2})});
    CHECK(d.generators() == std::vector<LatticeVector>{lv({2, 1})});
}

TEST_CASE("membership, relative interior, minimal faces") {
    Cone q = Cone::from_rays(2, {lv({1, 0}), lv({0, 1})});
    CHECK(q.contains(lv({3, 5})));
    CHECK(q.contains(rv({Rat(1, 2), Rat(0)})));
    CHECK_FALSE(q.contains(lv({-1, 0})));
    CHECK(q.contains_relint(rv({Rat(1), Rat(1)})));
    CHECK_FALSE(q.contains_relint(rv({Rat(1), Rat(0)})));

    CHECK(minimal_face_containing(q, rv({Rat(1), Rat(1)})) == q);
    CHECK(minimal_face_containing(q, rv({Rat(1), Rat(0)})) ==
          Cone::from_rays(2, {lv({1, 0})}));
    CHECK(minimal_face_containing(q, rv({Rat(0), Rat(0)})) == Cone::zero(2));
    CHECK_THROWS_AS(minimal_face_containing(q, rv({Rat(-1), Rat(0)})), const error&);

    // relint_point lands in the relative interior.
    CHECK(q.contains_relint(to_rational(q.relint_point())));
    Cone r = Cone::from_rays(2, {lv({1, 2})});
    CHECK(r.contains_relint(to_rational(r.relint_point())));
    CHECK(Cone::zero(2).contains_relint(to_rational(Cone::zero(2).relint_point())));
}

TEST_CASE("face enumeration") {
    Cone q = Cone::from_rays(2, {lv({1, 0}), lv({0, 1})});
    auto faces = all_faces(q);
    REQUIRE(faces.size() == 4); // zero cone, two rays, the cone itself
    CHECK(faces[0] == Cone::zero(2));
    CHECK(faces[1].dim() == 1);
    CHECK(faces[2].dim() == 1);
    CHECK(faces[3] == q);

    Cone oct = Cone::from_rays(3, {lv({1, 0, 0}), lv({0, 1, 0}), lv({0, 0, 1})});
    CHECK(all_faces(oct).size() == 8);

    // Non-simplicial: cone over a square has 1 + 4 + 4 + 1 faces.
    Cone sq = Cone::from_rays(
        3, {lv({1, 1, 1}), lv({1, -1, 1}), lv({-1, 1, 1}), lv({-1, -1, 1})});
    CHECK(sq.facets().size() == 4);
    CHECK(all_faces(sq).size() == 10);

    // Half-plane: itself and its lineality line.
    Cone h = Cone::from_inequalities(2, {lv({0, 1})}, {}, true);
    auto hf = all_faces(h);
    REQUIRE(hf.size() == 2);
    CHECK(hf[0].dim() == 1);
    CHECK_FALSE(hf[0].is_pointed());
    CHECK(hf[1] == h);
}

TEST_CASE("intersection") {
    Cone q = Cone::from_rays(2, {lv({1, 0}), lv({0, 1})});
    Cone c = Cone::from_rays(2, {lv({1, 1}), lv({-1, 1})});
    Cone i = intersect(q, c);
    CHECK(i == Cone::from_rays(2, {lv({1, 1}), lv({0, 1})}));

    // Intersection along a common face.
    Cone left = Cone::from_rays(2, {lv({0, 1}), lv({-1, 0})});
    CHECK(intersect(q, left) == Cone::from_rays(2, {lv({0, 1})}));

    // Disjoint interiors meeting only at the origin.
    Cone neg = Cone::from_rays(2, {lv({-1, 0}), lv({0, -1})});
    CHECK(intersect(q, neg).is_zero());
}

TEST_CASE("segment_in_cone frozen examples") {
    Cone q = Cone::from_rays(2, {lv({1, 0}), lv({0, 1})});

    auto i1 = segment_in_cone(q, rv({Rat(1), Rat(-1)}), lv({0, 1}));
    REQUIRE_FALSE(i1.empty);
    REQUIRE(i1.lo.has_value());
    CHECK(*i1.lo == Rat(1));
    CHECK_FALSE(i1.hi.has_value());

    auto i2 = segment_in_cone(q, rv({Rat(-1), Rat(0)}), lv({0, 1}));
    CHECK(i2.empty);

    // cone((1,0),(-1,-1)) = {y <= 0, x - y >= 0}; along (1, t) this gives t <= 0.
    Cone c = Cone::from_rays(2, {lv({1, 0}), lv({-1, -1})});
    CHECK(c.facets() == std::vector<LatticeVector>{lv({0, -1}), lv({1, -1})});
    auto i3 = segment_in_cone(c, rv({Rat(1), Rat(0)}), lv({0, 1}));
    REQUIRE_FALSE(i3.empty);
    CHECK_FALSE(i3.lo.has_value());
    REQUIRE(i3.hi.has_value());
    CHECK(*i3.hi == Rat(0));

    // A line through a lower-dimensional cone meets it in a single point.
    Cone ray = Cone::from_rays(2, {lv({1, 0})});
    auto i4 = segment_in_cone(ray, rv({Rat(2), Rat(-3)}), lv({0, 1}));
    REQUIRE_FALSE(i4.empty);
    CHECK(i4.is_point());
    CHECK(*i4.lo == Rat(3));

    auto i5 = segment_in_cone(ray, rv({Rat(-2), Rat(-3)}), lv({0, 1}));
    CHECK(i5.empty); // the line x = -2 misses the ray entirely

    // Bounded window: the segment enters and leaves a shifted wedge.
    Cone w = Cone::from_rays(2, {lv({1, 1}), lv({1, -1})});
    auto i6 = segment_in_cone(w, rv({Rat(2), Rat(-5)}), lv({0, 1}));
    REQUIRE_FALSE(i6.empty);
    CHECK(*i6.lo == Rat(3));
    CHECK(*i6.hi == Rat(7));
}

namespace {

Rat sample_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, 5);
    return Rat(num(rng), den(rng));
}

Cone random_pointed_cone(std::mt19937_64& rng, std::size_t rank) {
    std::uniform_int_distribution<int> entry(-4, 4);
    std::uniform_int_distribution<std::size_t> count(1, rank + 2);
    for (;;) {
        std::vector<LatticeVector> rays;
        const std::size_t n = count(rng);
        for (std::size_t i = 0; i < n; ++i) {
            LatticeVector v(rank);
            bool zero = true;
            for (auto& x : v) {
                x = entry(rng);
                if (x != 0) zero = false;
            }
            if (!zero) rays.push_back(v);
        }
        if (rays.empty()) continue;
        try {
            return Cone::from_rays(rank, rays);
        } catch (const error& e) {
            if (e.code() != errc::not_strongly_convex) throw;
        }
    }
}

} // namespace

TEST_CASE("double dual identity on random cones") {
    std::mt19937_64 rng(0xC0FFEE11);
    for (std::size_t rank = 1; rank <= 3; ++rank) {
        for (int trial = 0; trial < 40; ++trial) {
            Cone c = random_pointed_cone(rng, rank);
            Cone dd = dual_cone(dual_cone(c));
            CHECK(dd == c);
            CHECK(dd.facets() == c.facets());
            CHECK(dd.span_equations() == c.span_equations());
        }
    }
}

TEST_CASE("dual cone inequality description on random cones") {
    std::mt19937_64 rng(0xC0FFEE12);
    for (int trial = 0; trial < 30; ++trial) {
        Cone c = random_pointed_cone(rng, 3);
        Cone d = dual_cone(c);
        // Every dual generator is nonnegative on c; membership in d is exactly
        // nonnegativity against the generators of c.
        for (int s = 0; s < 20; ++s) {
            RationalVector p = {sample_rat(rng), sample_rat(rng), sample_rat(rng)};
            bool by_pairing = true;
            for (const auto& g : c.generators())
                if (pair(g, p) < 0) by_pairing = false;
            CHECK(d.contains(p) == by_pairing);
        }
    }
}

TEST_CASE("minimal face strictness property") {
    std::mt19937_64 rng(0xC0FFEE13);
    for (int trial = 0; trial < 30; ++trial) {
        Cone c = random_pointed_cone(rng, 3);
        // Random point of the cone: nonnegative rational combination of rays.
        std::uniform_int_distribution<int> coeff(0, 3);
        RationalVector p(3, Rat(0));
        for (const auto& g : c.generators()) {
            Rat t(coeff(rng), 1 + coeff(rng));
            for (std::size_t j = 0; j < 3; ++j) p[j] += t * Rat(g[j]);
        }
        Cone f = minimal_face_containing(c, p);
        CHECK(c.contains_cone(f));
        CHECK(f.contains_relint(p));
        // p is strictly positive on every facet of c that does not contain f.
        for (const auto& fac : c.facets()) {
            bool contains_face = true;
            for (const auto& g : f.generators())
                if (pair(fac, g) != 0) contains_face = false;
            if (contains_face) continue;
            CHECK(pair(fac, p) > 0);
        }
    }
}

TEST_CASE("segment_in_cone agrees with membership sampling") {
    std::mt19937_64 rng(0xC0FFEE14);
    for (std::size_t rank = 2; rank <= 3; ++rank) {
        for (int trial = 0; trial < 5; ++trial) {
            Cone c = random_pointed_cone(rng, rank);
            RationalVector base(rank);
            LatticeVector dir(rank, Int(0));
            for (auto& x : base) x = sample_rat(rng);
            std::uniform_int_distribution<int> entry(-3, 3);
            while (is_zero(dir))
                for (auto& x : dir) x = entry(rng);
            auto iv = segment_in_cone(c, base, dir);
            int checked = 0;
            for (int k = -500; checked < 1000; ++k, ++checked) {
                Rat t(k, 7);
                RationalVector p = base;
                for (std::size_t j = 0; j < rank; ++j) p[j] += t * Rat(dir[j]);
                CHECK(c.contains(p) == iv.contains(t));
            }
        }
    }
}

TEST_CASE("intersection is the set intersection on random pairs") {
    std::mt19937_64 rng(0xC0FFEE15);
    for (int trial = 0; trial < 25; ++trial) {
        Cone a = random_pointed_cone(rng, 3);
        Cone b = random_pointed_cone(rng, 3);
        Cone i = intersect(a, b);
        CHECK(a.contains_cone(i));
        CHECK(b.contains_cone(i));
        for (int s = 0; s < 30; ++s) {
            RationalVector p = {sample_rat(rng), sample_rat(rng), sample_rat(rng)};
            CHECK(i.contains(p) == (a.contains(p) && b.contains(p)));
        }
    }
}

TEST_CASE("faces are closed under intersection and have matching facet counts") {
    Cone oct = Cone::from_rays(3, {lv({1, 0, 0}), lv({0, 1, 0}), lv({0, 0, 1})});
    auto faces = all_faces(oct);
    for (const auto& f : faces)
        for (const auto& g : faces) {
            Cone i = intersect(f, g);
            CHECK(std::find(faces.begin(), faces.end(), i) != faces.end());
        }
}
