#include "doctest.h"

#include <random>

#include "chowfan/lattice.hpp"

using namespace chowfan;

namespace {

LatticeVector lv(std::initializer_list<int> xs) {
    LatticeVector v;
    for (int x : xs) v.push_back(x);
    return v;
}

IntMatrix mat(std::initializer_list<std::initializer_list<int>> rows) {
    std::vector<LatticeVector> r;
    for (auto& row : rows) r.push_back(lv(row));
    return IntMatrix::from_rows(r);
}

bool is_diagonal(const IntMatrix& d) {
    for (std::size_t i = 0; i < d.rows; ++i)
        for (std::size_t j = 0; j < d.cols; ++j)
            if (i != j && d.at(i, j) != 0) return false;
    return true;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<int> entry(-9, 9);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = entry(rng);
    return m;
}

} // namespace

TEST_CASE("primitive_vector frozen examples") {
    auto [u, c] = primitive_vector(lv({-3, -6, -9}));
    CHECK(u == lv({-1, -2, -3}));
    CHECK(c == 3);

    auto [u2, c2] = primitive_vector(lv({4}));
    CHECK(u2 == lv({1}));
    CHECK(c2 == 4);

    CHECK_THROWS_AS(primitive_vector(lv({0, 0})), error);
    try {
        primitive_vector(lv({0, 0}));
    } catch (const error& e) {
        CHECK(e.code() == errc::zero_vector);
    }
}

TEST_CASE("primitive_vector round trip on random vectors") {
    std::mt19937_64 rng(0xC0FFEE01);
    std::uniform_int_distribution<int> entry(-20, 20);
    for (int trial = 0; trial < 300; ++trial) {
        LatticeVector v(3);
        for (auto& x : v) x = entry(rng);
        if (is_zero(v)) continue;
        auto [u, c] = primitive_vector(v);
        CHECK(content(u) == 1);
        CHECK(c > 0);
        CHECK(scale(c, u) == v);
    }
}

TEST_CASE("primitive_direction clears denominators") {
    RationalVector v{Rat(1, 2), Rat(1, 3)};
    auto [u, c] = primitive_direction(v);
    CHECK(u == lv({3, 2}));
    CHECK(c == Rat(1, 6));
    CHECK_THROWS_AS(primitive_direction(RationalVector{Rat(0), Rat(0)}), error);
}

TEST_CASE("smith normal form frozen examples") {
    {
        auto s = smith_normal_form(mat({{3, 0}, {0, 5}}));
        CHECK(s.D.at(0, 0) == 1);
        CHECK(s.D.at(1, 1) == 15);
        CHECK(is_diagonal(s.D));
    }
    {
        auto s = smith_normal_form(mat({{2, 4}, {6, 8}}));
        CHECK(s.D.at(0, 0) == 2);
        CHECK(s.D.at(1, 1) == 4);
        CHECK(is_diagonal(s.D));
    }
}

TEST_CASE("smith normal form properties on random matrices") {
    std::mt19937_64 rng(0xC0FFEE02);
    std::uniform_int_distribution<int> dim(1, 4);
    for (int trial = 0; trial < 250; ++trial) {
        std::size_t r = dim(rng), c = dim(rng);
        IntMatrix A = random_matrix(rng, r, c);
        auto s = smith_normal_form(A);

        CHECK(mul(mul(s.U, A), s.V) == s.D);
        CHECK(is_diagonal(s.D));
        Int du = det(s.U), dv = det(s.V);
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
        // nonnegative diagonal in divisibility order
        std::size_t n = std::min(r, c);
        for (std::size_t i = 0; i < n; ++i) CHECK(s.D.at(i, i) >= 0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (s.D.at(i, i) != 0) {
                CHECK(s.D.at(i + 1, i + 1) % s.D.at(i, i) == 0);
            } else {
                CHECK(s.D.at(i + 1, i + 1) == 0);
            }
        }
        // independent oracle: d_1 = gcd of all entries
        Int g = 0;
        for (const Int& x : A.a) g = gcd(g, x);
        if (g < 0) g = -g;
        if (n > 0) CHECK(s.D.at(0, 0) == g);
        // independent oracle: |det| is preserved for square matrices
        if (r == c) {
            Int p = 1;
            for (std::size_t i = 0; i < n; ++i) p *= s.D.at(i, i);
            Int dA = det(A);
            CHECK((p == dA || p == -dA));
        }
    }
}

TEST_CASE("kernel_basis spans the saturated kernel") {
    std::mt19937_64 rng(0xC0FFEE03);
    std::uniform_int_distribution<int> dim(1, 4);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t r = dim(rng), c = dim(rng);
        IntMatrix A = random_matrix(rng, r, c);
        auto basis = kernel_basis(A);
        CHECK(basis.size() == c - rank(A));
        for (const auto& k : basis) CHECK(is_zero(A * k));
        if (!basis.empty()) {
            // saturated: the basis stacks to a matrix with all elementary divisors 1
            auto s = smith_normal_form(IntMatrix::from_rows(basis, c));
            for (std::size_t i = 0; i < basis.size(); ++i) CHECK(s.D.at(i, i) == 1);
        }
    }
}

TEST_CASE("unimodular_inverse inverts products of elementary matrices") {
    std::mt19937_64 rng(0xC0FFEE04);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + trial % 4;
        IntMatrix U = IntMatrix::identity(n);
        std::uniform_int_distribution<std::size_t> idx(0, n - 1);
        for (int step = 0; step < 6; ++step) {
            std::size_t i = idx(rng), j = idx(rng);
            if (i == j) continue;
            Int q = coef(rng);
            for (std::size_t ccol = 0; ccol < n; ++ccol) U.at(i, ccol) += q * U.at(j, ccol);
        }
        IntMatrix inv = unimodular_inverse(U);
        CHECK(mul(U, inv) == IntMatrix::identity(n));
        CHECK(mul(inv, U) == IntMatrix::identity(n));
    }
}

TEST_CASE("quotient_lattice frozen conventions") {
    {
        auto q = quotient_lattice(lv({0, 1}));
        CHECK(q.target_rank == 1);
        CHECK(q.projection.row(0) == lv({1, 0})); // pi(x, y) = x
    }
    {
        auto q = quotient_lattice(lv({1, 1}));
        CHECK(q.target_rank == 1);
        // pi(x, y) = x - y: rows are sign-normalized to a positive leading entry
        CHECK(q.projection.row(0) == lv({1, -1}));
    }
    {
        auto q = quotient_lattice(lv({1, 2}));
        CHECK(q.target_rank == 1);
        CHECK(q.projection.row(0) == lv({2, -1})); // pi(x, y) = 2x - y
    }
    {
        auto q = quotient_lattice(lv({1, 0, 0}));
        CHECK(q.target_rank == 2);
        CHECK(q.projection.row(0) == lv({0, 1, 0})); // pi(x, y, z) = (y, z)
        CHECK(q.projection.row(1) == lv({0, 0, 1}));
    }
    {
        // rank-1 source: quotient is the rank-0 lattice
        auto q = quotient_lattice(lv({-1}));
        CHECK(q.target_rank == 0);
        CHECK(q.projection.rows == 0);
        RationalVector base = q.lift(RationalVector{});
        CHECK(base == RationalVector{Rat(0)});
    }
    CHECK_THROWS_AS(quotient_lattice(lv({0, 0})), error);
    CHECK_THROWS_AS(quotient_lattice(lv({2, 4})), error);
    try {
        quotient_lattice(lv({2, 4}));
    } catch (const error& e) {
        CHECK(e.code() == errc::not_primitive);
    }
}

TEST_CASE("quotient_lattice properties on random primitive directions") {
    std::mt19937_64 rng(0xC0FFEE05);
    std::uniform_int_distribution<int> entry(-7, 7);
    std::uniform_int_distribution<int> dim(1, 4);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t d = dim(rng);
        LatticeVector v(d);
        for (auto& x : v) x = entry(rng);
        if (is_zero(v)) continue;
        LatticeVector n0 = primitive_vector(v).first;
        auto q = quotient_lattice(n0);
        CHECK(q.target_rank == d - 1);
        CHECK(is_zero(q.project(n0)));
        // projection * section = identity on the quotient
        CHECK(mul(q.projection, q.section) == IntMatrix::identity(d - 1));
        // [n0 | section] assembles to a unimodular matrix: lifts are canonical
        IntMatrix W(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            W.at(i, 0) = n0[i];
            for (std::size_t j = 0; j + 1 < d; ++j) W.at(i, j + 1) = q.section.at(i, j);
        }
        Int dw = det(W);
        CHECK((dw == 1 || dw == -1));
    }
}

TEST_CASE("sublattice_quotient rejects non-saturated input") {
    CHECK_THROWS_AS(sublattice_quotient({lv({2, 0})}, 2), error);
    auto q = sublattice_quotient({lv({1, 0, 0}), lv({0, 1, 0})}, 3);
    CHECK(q.target_rank == 1);
    CHECK(is_zero(q.project(lv({5, -3, 0}))));
    CHECK(q.project(lv({0, 0, 2})) == lv({2}));
}

TEST_CASE("rational serialization stays exact") {
    CHECK(to_string(Rat(6, 4)) == "3/2");
    CHECK(to_string(Rat(-6, 4)) == "-3/2");
    CHECK(to_string(Rat(8, 2)) == "4");
    CHECK(to_string(lv({1, -2})) == "(1,-2)");
}
