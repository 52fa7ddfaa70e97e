#include "chowfan/error.hpp"
#include "chowfan/polytope.hpp"
#include "doctest.h"

using namespace chowfan;

namespace {

LatticeVector lv(std::initializer_list<long> xs) {
    LatticeVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

} // namespace

TEST_CASE("vertex canonicalization") {
    // Interior, edge, and duplicate points are not vertices.
    Polytope q = Polytope::from_vertices(
        2, {lv({0, 0}), lv({2, 0}), lv({0, 2}), lv({2, 2}), lv({1, 1}), lv({1, 0}), lv({0, 0})});
    CHECK(q.vertices() ==
          std::vector<LatticeVector>{lv({0, 0}), lv({0, 2}), lv({2, 0}), lv({2, 2})});
    CHECK(q.is_full_dimensional());

    Polytope point = Polytope::from_vertices(2, {lv({3, 4})});
    CHECK(point.vertices() == std::vector<LatticeVector>{lv({3, 4})});
    CHECK_FALSE(point.is_full_dimensional());

    Polytope seg = Polytope::from_vertices(2, {lv({0, 0}), lv({2, 2}), lv({1, 1})});
    CHECK(seg.vertices() == std::vector<LatticeVector>{lv({0, 0}), lv({2, 2})});
    CHECK_FALSE(seg.is_full_dimensional());
}

TEST_CASE("membership") {
    Polytope tri = Polytope::from_vertices(2, {lv({0, 0}), lv({1, 0}), lv({0, 1})});
    CHECK(tri.contains({Rat(1, 3), Rat(1, 3)}));
    CHECK(tri.contains({Rat(1, 2), Rat(1, 2)}));
    CHECK_FALSE(tri.contains({Rat(2, 3), Rat(2, 3)}));
    CHECK_FALSE(tri.contains({Rat(-1, 5), Rat(0)}));
}

TEST_CASE("lattice point enumeration") {
    Polytope square =
        Polytope::from_vertices(2, {lv({0, 0}), lv({1, 0}), lv({0, 1}), lv({1, 1})});
    CHECK(lattice_points(square).size() == 4);

    Polytope twice = Polytope::from_vertices(2, {lv({0, 0}), lv({2, 0}), lv({0, 2})});
    auto pts = lattice_points(twice);
    CHECK(pts.size() == 6);
    CHECK(pts == std::vector<LatticeVector>{lv({0, 0}), lv({0, 1}), lv({0, 2}), lv({1, 0}),
                                            lv({1, 1}), lv({2, 0})});

    Polytope seg = Polytope::from_vertices(1, {lv({0}), lv({3})});
    CHECK(lattice_points(seg) ==
          std::vector<LatticeVector>{lv({0}), lv({1}), lv({2}), lv({3})});

    // A lower-dimensional polytope still enumerates correctly.
    Polytope diag = Polytope::from_vertices(2, {lv({0, 0}), lv({2, 2})});
    CHECK(lattice_points(diag) ==
          std::vector<LatticeVector>{lv({0, 0}), lv({1, 1}), lv({2, 2})});
}

TEST_CASE("homogenization structure") {
    Polytope tri = Polytope::from_vertices(2, {lv({0, 0}), lv({1, 0}), lv({0, 1})});
    const Cone& h = tri.homogenization();
    CHECK(h.rank() == 3);
    CHECK(h.dim() == 3);
    CHECK(h.generators() ==
          std::vector<LatticeVector>{lv({0, 0, 1}), lv({0, 1, 1}), lv({1, 0, 1})});
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(Polytope::from_vertices(2, {}), const error&);
    CHECK_THROWS_AS(Polytope::from_vertices(2, {lv({1, 2, 3})}), const error&);
}
