#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chowfan/error.hpp"

namespace chowfan {

// Exact arithmetic only: cpp_int for lattice data, cpp_rational for anything
// that has to divide.  cpp_rational keeps lowest terms with a positive
// denominator on its own, which is the invariant RationalVector needs.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using LatticeVector = std::vector<Int>;
using RationalVector = std::vector<Rat>;

// ---- vector helpers -------------------------------------------------------

bool is_zero(const LatticeVector& v);
bool is_zero(const RationalVector& v);

LatticeVector add(const LatticeVector& a, const LatticeVector& b);
LatticeVector sub(const LatticeVector& a, const LatticeVector& b);
LatticeVector neg(const LatticeVector& v);
LatticeVector scale(const Int& c, const LatticeVector& v);

RationalVector add(const RationalVector& a, const RationalVector& b);
RationalVector sub(const RationalVector& a, const RationalVector& b);
RationalVector scale(const Rat& c, const RationalVector& v);

// Dual pairing <m, x> between a lattice (or rational) covector and vector.
Int pair(const LatticeVector& m, const LatticeVector& x);
Rat pair(const LatticeVector& m, const RationalVector& x);

RationalVector to_rational(const LatticeVector& v);

// A rational vector that happens to be integral, converted back; rejects
// non-integral input with NonIntegralDirection.
LatticeVector to_integral(const RationalVector& v);
bool is_integral(const RationalVector& v);

// gcd of all coordinates (nonnegative); 0 for the zero vector.
Int content(const LatticeVector& v);

// v = c * u with u primitive and c > 0.  Rejects the zero vector.
std::pair<LatticeVector, Int> primitive_vector(const LatticeVector& v);

// Clears denominators of a nonzero rational vector: returns the primitive
// lattice vector u and the positive rational c with v = c * u.
std::pair<LatticeVector, Rat> primitive_direction(const RationalVector& v);

// True if the first nonzero coordinate is positive ("lex-positive"), the sign
// convention used wherever a canonical representative of {v, -v} is needed.
bool lex_positive(const LatticeVector& v);
LatticeVector lex_normalize(const LatticeVector& v);

std::string to_string(const LatticeVector& v);
std::string to_string(const RationalVector& v);
std::string to_string(const Rat& q);

// ---- matrices -------------------------------------------------------------

// Dense row-major integer matrix; small (desk scale), so no cleverness.
struct IntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Int> a; // rows * cols entries

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    LatticeVector row(std::size_t i) const;
    LatticeVector col(std::size_t j) const;

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<LatticeVector>& rows_in, std::size_t cols_hint = 0);

    bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

IntMatrix mul(const IntMatrix& A, const IntMatrix& B);
IntMatrix transpose(const IntMatrix& A);
LatticeVector operator*(const IntMatrix& A, const LatticeVector& x);
RationalVector operator*(const IntMatrix& A, const RationalVector& x);

// Exact determinant (fraction-free Bareiss elimination); square matrices only.
Int det(const IntMatrix& A);

// Row rank over the rationals.
std::size_t rank(const IntMatrix& A);

// Inverse of a unimodular integer matrix (|det| = 1), exact.
IntMatrix unimodular_inverse(const IntMatrix& U);

// ---- Smith normal form ----------------------------------------------------

// U * A * V = D with U, V unimodular and D diagonal, d_i >= 0, d_i | d_{i+1}.
struct SmithDecomposition {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
};

SmithDecomposition smith_normal_form(const IntMatrix& A);

// Basis of the saturated integer kernel {x : A x = 0}, as rows.  The basis is
// the canonical one produced by the SNF convention (kernel columns of V).
std::vector<LatticeVector> kernel_basis(const IntMatrix& A);

// ---- quotient lattices ----------------------------------------------------

// Projection N -> N/L for a saturated sublattice L, plus the fixed right
// inverse used for canonical lifts.  Both matrices come from one Smith
// decomposition, so the choice is deterministic.
struct SublatticeQuotient {
    std::size_t source_rank = 0;
    std::size_t target_rank = 0;
    IntMatrix projection; // target_rank x source_rank
    IntMatrix section;    // source_rank x target_rank, projection * section = I

    LatticeVector project(const LatticeVector& x) const { return projection * x; }
    RationalVector project(const RationalVector& x) const { return projection * x; }
    LatticeVector lift(const LatticeVector& y) const { return section * y; }
    RationalVector lift(const RationalVector& y) const { return section * y; }
};

// Quotient by the saturated sublattice spanned by the given (independent,
// jointly saturated) basis rows.
SublatticeQuotient sublattice_quotient(const std::vector<LatticeVector>& basis, std::size_t ambient_rank);

// Quotient of N by the line Z*n0 for primitive nonzero n0; target rank d-1
// (d = 1 gives the rank-0 lattice).  This is the map N -> N' every
// Chow-quotient computation runs through.
struct QuotientLatticeMap {
    std::size_t source_rank = 0;
    std::size_t target_rank = 0;
    IntMatrix projection;          // (d-1) x d
    IntMatrix section;             // d x (d-1)
    LatticeVector kernel_generator; // n0

    LatticeVector project(const LatticeVector& x) const { return projection * x; }
    RationalVector project(const RationalVector& x) const { return projection * x; }
    LatticeVector lift(const LatticeVector& y) const { return section * y; }
    RationalVector lift(const RationalVector& y) const { return section * y; }
};

QuotientLatticeMap quotient_lattice(const LatticeVector& n0);

} // namespace chowfan
