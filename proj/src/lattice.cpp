#include "chowfan/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace chowfan {

namespace {

void check_same_rank(std::size_t a, std::size_t b, const char* who) {
    if (a != b) fail(errc::rank_mismatch, std::string(who) + ": ranks " + std::to_string(a) + " and " + std::to_string(b));
}

} // namespace

// ---- vector helpers -------------------------------------------------------

bool is_zero(const LatticeVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

bool is_zero(const RationalVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

LatticeVector add(const LatticeVector& a, const LatticeVector& b) {
    check_same_rank(a.size(), b.size(), "add");
    LatticeVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

LatticeVector sub(const LatticeVector& a, const LatticeVector& b) {
    check_same_rank(a.size(), b.size(), "sub");
    LatticeVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

LatticeVector neg(const LatticeVector& v) {
    LatticeVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
}

LatticeVector scale(const Int& c, const LatticeVector& v) {
    LatticeVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

RationalVector add(const RationalVector& a, const RationalVector& b) {
    check_same_rank(a.size(), b.size(), "add");
    RationalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RationalVector sub(const RationalVector& a, const RationalVector& b) {
    check_same_rank(a.size(), b.size(), "sub");
    RationalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RationalVector scale(const Rat& c, const RationalVector& v) {
    RationalVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

Int pair(const LatticeVector& m, const LatticeVector& x) {
    check_same_rank(m.size(), x.size(), "pair");
    Int s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += m[i] * x[i];
    return s;
}

Rat pair(const LatticeVector& m, const RationalVector& x) {
    check_same_rank(m.size(), x.size(), "pair");
    Rat s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += Rat(m[i]) * x[i];
    return s;
}

RationalVector to_rational(const LatticeVector& v) {
    RationalVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

bool is_integral(const RationalVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return denominator(x) == 1; });
}

LatticeVector to_integral(const RationalVector& v) {
    LatticeVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (denominator(v[i]) != 1)
            fail(errc::non_integral_direction, "coordinate " + to_string(v[i]) + " is not an integer");
        r[i] = numerator(v[i]);
    }
    return r;
}

Int content(const LatticeVector& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    return g < 0 ? Int(-g) : g;
}

std::pair<LatticeVector, Int> primitive_vector(const LatticeVector& v) {
    Int g = content(v);
    if (g == 0) fail(errc::zero_vector, "primitive_vector of the zero vector");
    LatticeVector u(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) u[i] = v[i] / g;
    return {u, g};
}

std::pair<LatticeVector, Rat> primitive_direction(const RationalVector& v) {
    if (is_zero(v)) fail(errc::zero_vector, "primitive_direction of the zero vector");
    Int den = 1;
    for (const Rat& x : v) den = lcm(den, denominator(x));
    LatticeVector w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = numerator(v[i]) * (den / denominator(v[i]));
    auto [u, c] = primitive_vector(w);
    return {u, Rat(c, den)};
}

bool lex_positive(const LatticeVector& v) {
    for (const Int& x : v) {
        if (x > 0) return true;
        if (x < 0) return false;
    }
    return false; // zero vector: neither
}

LatticeVector lex_normalize(const LatticeVector& v) {
    return lex_positive(v) || is_zero(v) ? v : neg(v);
}

std::string to_string(const Rat& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

std::string to_string(const LatticeVector& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

std::string to_string(const RationalVector& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

// ---- matrices -------------------------------------------------------------

LatticeVector IntMatrix::row(std::size_t i) const {
    LatticeVector r(cols);
    for (std::size_t j = 0; j < cols; ++j) r[j] = at(i, j);
    return r;
}

LatticeVector IntMatrix::col(std::size_t j) const {
    LatticeVector r(rows);
    for (std::size_t i = 0; i < rows; ++i) r[i] = at(i, j);
    return r;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<LatticeVector>& rows_in, std::size_t cols_hint) {
    std::size_t c = rows_in.empty() ? cols_hint : rows_in.front().size();
    IntMatrix m(rows_in.size(), c);
    for (std::size_t i = 0; i < rows_in.size(); ++i) {
        check_same_rank(rows_in[i].size(), c, "from_rows");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows_in[i][j];
    }
    return m;
}

IntMatrix mul(const IntMatrix& A, const IntMatrix& B) {
    check_same_rank(A.cols, B.rows, "mul");
    IntMatrix C(A.rows, B.cols);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t k = 0; k < A.cols; ++k) {
            if (A.at(i, k) == 0) continue;
            for (std::size_t j = 0; j < B.cols; ++j) C.at(i, j) += A.at(i, k) * B.at(k, j);
        }
    return C;
}

IntMatrix transpose(const IntMatrix& A) {
    IntMatrix T(A.cols, A.rows);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

LatticeVector operator*(const IntMatrix& A, const LatticeVector& x) {
    check_same_rank(A.cols, x.size(), "apply");
    LatticeVector r(A.rows);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) r[i] += A.at(i, j) * x[j];
    return r;
}

RationalVector operator*(const IntMatrix& A, const RationalVector& x) {
    check_same_rank(A.cols, x.size(), "apply");
    RationalVector r(A.rows);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) r[i] += Rat(A.at(i, j)) * x[j];
    return r;
}

Int det(const IntMatrix& A) {
    check_same_rank(A.rows, A.cols, "det");
    std::size_t n = A.rows;
    if (n == 0) return 1;
    IntMatrix d = A;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (d.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && d.at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(d.at(k, j), d.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                d.at(i, j) = (d.at(i, j) * d.at(k, k) - d.at(i, k) * d.at(k, j)) / prev;
        prev = d.at(k, k);
    }
    return sign > 0 ? d.at(n - 1, n - 1) : Int(-d.at(n - 1, n - 1));
}

std::size_t rank(const IntMatrix& A) {
    // Fraction-free echelon; matrices stay tiny so no pivot strategy needed.
    IntMatrix d = A;
    std::size_t r = 0;
    for (std::size_t c = 0; c < d.cols && r < d.rows; ++c) {
        std::size_t p = r;
        while (p < d.rows && d.at(p, c) == 0) ++p;
        if (p == d.rows) continue;
        for (std::size_t j = 0; j < d.cols; ++j) std::swap(d.at(r, j), d.at(p, j));
        for (std::size_t i = r + 1; i < d.rows; ++i) {
            if (d.at(i, c) == 0) continue;
            Int a = d.at(r, c), b = d.at(i, c);
            for (std::size_t j = 0; j < d.cols; ++j) d.at(i, j) = d.at(i, j) * a - d.at(r, j) * b;
        }
        ++r;
    }
    return r;
}

IntMatrix unimodular_inverse(const IntMatrix& U) {
    check_same_rank(U.rows, U.cols, "unimodular_inverse");
    std::size_t n = U.rows;
    // Rational Gauss-Jordan on [U | I]; entries of the result must be integers.
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Rat(U.at(i, j));
        m[i][n + i] = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k] == 0) ++p;
        if (p == n) fail(errc::rank_mismatch, "unimodular_inverse of a singular matrix");
        std::swap(m[k], m[p]);
        Rat piv = m[k][k];
        for (std::size_t j = 0; j < 2 * n; ++j) m[k][j] /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m[i][k] == 0) continue;
            Rat f = m[i][k];
            for (std::size_t j = 0; j < 2 * n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    IntMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rat& q = m[i][n + j];
            if (denominator(q) != 1)
                fail(errc::rank_mismatch, "matrix is not unimodular (inverse not integral)");
            inv.at(i, j) = numerator(q);
        }
    return inv;
}

// ---- Smith normal form ----------------------------------------------------

SmithDecomposition smith_normal_form(const IntMatrix& A) {
    SmithDecomposition s;
    s.D = A;
    s.U = IntMatrix::identity(A.rows);
    s.V = IntMatrix::identity(A.cols);
    IntMatrix& D = s.D;
    IntMatrix& U = s.U;
    IntMatrix& V = s.V;

    auto row_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < D.cols; ++c) std::swap(D.at(i, c), D.at(j, c));
        for (std::size_t c = 0; c < U.cols; ++c) std::swap(U.at(i, c), U.at(j, c));
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < D.rows; ++r) std::swap(D.at(r, i), D.at(r, j));
        for (std::size_t r = 0; r < V.rows; ++r) std::swap(V.at(r, i), V.at(r, j));
    };
    // row dst -= q * row src (and mirror on U); col likewise on V.
    auto row_axpy = [&](std::size_t dst, std::size_t src, const Int& q) {
        for (std::size_t c = 0; c < D.cols; ++c) D.at(dst, c) -= q * D.at(src, c);
        for (std::size_t c = 0; c < U.cols; ++c) U.at(dst, c) -= q * U.at(src, c);
    };
    auto col_axpy = [&](std::size_t dst, std::size_t src, const Int& q) {
        for (std::size_t r = 0; r < D.rows; ++r) D.at(r, dst) -= q * D.at(r, src);
        for (std::size_t r = 0; r < V.rows; ++r) V.at(r, dst) -= q * V.at(r, src);
    };
    auto row_negate = [&](std::size_t i) {
        for (std::size_t c = 0; c < D.cols; ++c) D.at(i, c) = -D.at(i, c);
        for (std::size_t c = 0; c < U.cols; ++c) U.at(i, c) = -U.at(i, c);
    };

    const std::size_t n = std::min(A.rows, A.cols);
    for (std::size_t k = 0; k < n; ++k) {
        bool block_empty = false;
        for (;;) {
            // Smallest nonzero magnitude in the trailing block becomes the pivot.
            bool found = false;
            std::size_t pi = k, pj = k;
            Int best;
            for (std::size_t i = k; i < D.rows; ++i)
                for (std::size_t j = k; j < D.cols; ++j) {
                    if (D.at(i, j) == 0) continue;
                    Int m = abs(D.at(i, j));
                    if (!found || m < best) {
                        found = true;
                        best = m;
                        pi = i;
                        pj = j;
                    }
                }
            if (!found) {
                block_empty = true;
                break;
            }
            row_swap(k, pi);
            col_swap(k, pj);
            bool dirty = false;
            for (std::size_t i = 0; i < D.rows; ++i) {
                if (i == k || D.at(i, k) == 0) continue;
                Int q = D.at(i, k) / D.at(k, k);
                row_axpy(i, k, q);
                if (D.at(i, k) != 0) dirty = true;
            }
            if (dirty) continue;
            for (std::size_t j = 0; j < D.cols; ++j) {
                if (j == k || D.at(k, j) == 0) continue;
                Int q = D.at(k, j) / D.at(k, k);
                col_axpy(j, k, q);
                if (D.at(k, j) != 0) dirty = true;
            }
            if (dirty) continue;
            // Pivot divides its row and column; force it to divide the whole
            // trailing block so the diagonal comes out in divisibility order.
            bool fixed = false;
            for (std::size_t i = k + 1; i < D.rows && !fixed; ++i)
                for (std::size_t j = k + 1; j < D.cols && !fixed; ++j)
                    if (D.at(i, j) % D.at(k, k) != 0) {
                        row_axpy(k, i, Int(-1));
                        fixed = true;
                    }
            if (fixed) continue;
            break;
        }
        if (block_empty) break;
        if (D.at(k, k) < 0) row_negate(k);
    }
    return s;
}

std::vector<LatticeVector> kernel_basis(const IntMatrix& A) {
    SmithDecomposition s = smith_normal_form(A);
    std::size_t r = 0;
    for (std::size_t i = 0; i < std::min(s.D.rows, s.D.cols); ++i)
        if (s.D.at(i, i) != 0) ++r;
    std::vector<LatticeVector> basis;
    for (std::size_t j = r; j < A.cols; ++j) basis.push_back(s.V.col(j));
    return basis;
}

// ---- quotient lattices ----------------------------------------------------

SublatticeQuotient sublattice_quotient(const std::vector<LatticeVector>& basis, std::size_t ambient_rank) {
    const std::size_t k = basis.size();
    if (k > ambient_rank) fail(errc::rank_mismatch, "sublattice basis larger than ambient rank");
    for (const auto& b : basis) check_same_rank(b.size(), ambient_rank, "sublattice_quotient");

    // Columns of Bt are the basis vectors; U carries them to e_1..e_k exactly
    // when the sublattice is saturated (all elementary divisors 1).
    IntMatrix Bt(ambient_rank, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < ambient_rank; ++i) Bt.at(i, j) = basis[j][i];
    SmithDecomposition s = smith_normal_form(Bt);
    for (std::size_t i = 0; i < k; ++i) {
        if (s.D.at(i, i) == 0) fail(errc::rank_mismatch, "sublattice basis is not independent");
        if (s.D.at(i, i) != 1) fail(errc::not_primitive, "sublattice is not saturated");
    }
    // U*Bt*V = D means U maps the sublattice onto span(e_1..e_k); the quotient
    // coordinates are the remaining rows of U, and the fixed right inverse is
    // the matching columns of U^{-1}.
    IntMatrix Uinv = unimodular_inverse(s.U);
    SublatticeQuotient q;
    q.source_rank = ambient_rank;
    q.target_rank = ambient_rank - k;
    q.projection = IntMatrix(q.target_rank, ambient_rank);
    q.section = IntMatrix(ambient_rank, q.target_rank);
    for (std::size_t i = 0; i < q.target_rank; ++i)
        for (std::size_t j = 0; j < ambient_rank; ++j) q.projection.at(i, j) = s.U.at(k + i, j);
    for (std::size_t i = 0; i < ambient_rank; ++i)
        for (std::size_t j = 0; j < q.target_rank; ++j) q.section.at(i, j) = Uinv.at(i, k + j);
    // Canonical signs: make each quotient coordinate's leading entry positive
    // (SNF transforms are only determined up to signs).  Flipping a projection
    // row together with the matching section column keeps projection*section
    // the identity.
    for (std::size_t i = 0; i < q.target_rank; ++i) {
        std::size_t lead = 0;
        while (lead < ambient_rank && q.projection.at(i, lead) == 0) ++lead;
        if (lead == ambient_rank || q.projection.at(i, lead) > 0) continue;
        for (std::size_t j = 0; j < ambient_rank; ++j)
            q.projection.at(i, j) = -q.projection.at(i, j);
        for (std::size_t j = 0; j < ambient_rank; ++j) q.section.at(j, i) = -q.section.at(j, i);
    }
    return q;
}

QuotientLatticeMap quotient_lattice(const LatticeVector& n0) {
    if (n0.empty()) fail(errc::rank_mismatch, "quotient_lattice of a rank-0 lattice");
    if (is_zero(n0)) fail(errc::direction_zero, "quotient_lattice along the zero direction");
    if (content(n0) != 1) fail(errc::not_primitive, "direction " + to_string(n0) + " is not primitive");
    SublatticeQuotient q = sublattice_quotient({n0}, n0.size());
    QuotientLatticeMap m;
    m.source_rank = q.source_rank;
    m.target_rank = q.target_rank;
    m.projection = std::move(q.projection);
    m.section = std::move(q.section);
    m.kernel_generator = n0;
    return m;
}

} // namespace chowfan
