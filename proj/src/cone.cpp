#include "chowfan/cone.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

#include "chowfan/error.hpp"

namespace chowfan {

namespace {

// Floor division with positive divisor, used by the Hermite reduction step.
Int floor_div(const Int& a, const Int& b) {
    assert(b > 0);
    Int q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

LatticeVector combine(const LatticeVector& coeffs, const std::vector<LatticeVector>& basis,
                      std::size_t ambient_rank) {
    LatticeVector out(ambient_rank, Int(0));
    assert(coeffs.size() == basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < ambient_rank; ++j) out[j] += coeffs[i] * basis[i][j];
    return out;
}

std::vector<LatticeVector> sorted_unique(std::vector<LatticeVector> vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

// Coordinates of p with respect to a basis of a saturated sublattice given as
// rows (p must lie in the sublattice; exact rational elimination, integral
// result asserted).
LatticeVector coords_in_basis(const std::vector<LatticeVector>& basis, std::size_t ambient_rank,
                              const LatticeVector& p) {
    const std::size_t s = basis.size();
    if (s == 0) {
        assert(is_zero(p));
        return {};
    }
    // Solve sum_i x_i * basis[i] = p by elimination on the (ambient x s) system.
    std::vector<RationalVector> cols(s, RationalVector(ambient_rank));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < ambient_rank; ++j) cols[i][j] = Rat(basis[i][j]);
    RationalVector rhs = to_rational(p);

    std::vector<std::size_t> pivot_row(s);
    std::size_t r = 0;
    for (std::size_t c = 0; c < s && r < ambient_rank; ++c) {
        std::size_t piv = ambient_rank;
        for (std::size_t i = r; i < ambient_rank; ++i)
            if (cols[c][i] != 0) { piv = i; break; }
        assert(piv != ambient_rank); // basis rows are independent
        if (piv != r) {
            for (std::size_t cc = 0; cc < s; ++cc) std::swap(cols[cc][piv], cols[cc][r]);
            std::swap(rhs[piv], rhs[r]);
        }
        const Rat inv = Rat(1) / cols[c][r];
        for (std::size_t i = 0; i < ambient_rank; ++i) {
            if (i == r || cols[c][i] == 0) continue;
            const Rat f = cols[c][i] * inv;
            for (std::size_t cc = c; cc < s; ++cc) cols[cc][i] -= f * cols[cc][r];
            rhs[i] -= f * rhs[r];
        }
        pivot_row[c] = r;
        ++r;
    }
    RationalVector x(s);
    for (std::size_t c = s; c-- > 0;) {
        Rat acc = rhs[pivot_row[c]];
        for (std::size_t cc = c + 1; cc < s; ++cc) acc -= cols[cc][pivot_row[c]] * x[cc];
        x[c] = acc / cols[c][pivot_row[c]];
    }
    // Rows below every pivot must have been annihilated (consistency).
    for (std::size_t i = 0; i < ambient_rank; ++i) {
        Rat acc = to_rational(p)[i];
        for (std::size_t c = 0; c < s; ++c) acc -= Rat(basis[c][i]) * x[c];
        assert(acc == 0);
    }
    assert(is_integral(x));
    return to_integral(x);
}

// Solve <m, b_i> = target_i over the integers, where the rows b_i form a
// basis of a saturated sublattice.  The particular solution with no component
// along the annihilator is returned; it is primitive whenever target is.
LatticeVector solve_on_basis(const std::vector<LatticeVector>& basis, std::size_t ambient_rank,
                             const LatticeVector& target) {
    const std::size_t s = basis.size();
    assert(target.size() == s);
    IntMatrix b = IntMatrix::from_rows(basis, ambient_rank);
    SmithDecomposition sd = smith_normal_form(b);
    LatticeVector y(ambient_rank, Int(0));
    LatticeVector ut = sd.U * target;
    for (std::size_t i = 0; i < s; ++i) {
        const Int& d = sd.D.at(i, i);
        assert(d == 1); // saturated basis
        y[i] = ut[i];
    }
    return sd.V * y;
}

void append_negations(std::vector<LatticeVector>& gens, const std::vector<LatticeVector>& lin) {
    for (const auto& l : lin) {
        gens.push_back(l);
        gens.push_back(neg(l));
    }
}

// Facet normals of cone(gens), computed inside the saturated span lattice and
// lifted back to the ambient dual lattice.  gens must span the cone (lineality
// included as +/- pairs); span_basis must be the Hermite basis of the cone's
// saturated linear span.
std::vector<LatticeVector> facet_normals(const std::vector<LatticeVector>& gens,
                                         const std::vector<LatticeVector>& span_basis,
                                         std::size_t ambient_rank) {
    const std::size_t s = span_basis.size();
    if (s == 0) return {};
    std::vector<LatticeVector> coords;
    coords.reserve(gens.size());
    for (const auto& g : gens) coords.push_back(coords_in_basis(span_basis, ambient_rank, g));

    std::set<LatticeVector> inner;
    const std::size_t n = coords.size();
    const std::size_t k = s - 1;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    auto advance = [&]() -> bool {
        if (k == 0) return false;
        std::size_t i = k;
        while (i-- > 0) {
            if (idx[i] + (k - i) < n) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    if (k > n) return {}; // not enough generators to cut a facet (cannot happen for valid input)
    bool more = true;
    while (more) {
        std::vector<LatticeVector> sub;
        sub.reserve(k);
        for (std::size_t i : idx) sub.push_back(coords[i]);
        auto ker = kernel_basis(IntMatrix::from_rows(sub, s));
        if (ker.size() == 1) {
            LatticeVector nrm = primitive_vector(ker[0]).first;
            bool nonneg = true, nonpos = true;
            for (const auto& c : coords) {
                const Int v = pair(nrm, c);
                if (v < 0) nonneg = false;
                if (v > 0) nonpos = false;
            }
            if (nonneg != nonpos) inner.insert(nonneg ? nrm : neg(nrm));
        }
        more = advance();
    }
    std::vector<LatticeVector> out;
    out.reserve(inner.size());
    for (const auto& nrm : inner) out.push_back(solve_on_basis(span_basis, ambient_rank, nrm));
    std::sort(out.begin(), out.end());
    return out;
}

// Extreme rays of the pointed full-dimensional cone {x : <a, x> >= 0} in
// Z^q.  Candidates come from (q-1)-subsets of the inequalities whose common
// kernel is a line; the sign test keeps exactly the extreme rays.
std::vector<LatticeVector> pointed_rays(const std::vector<LatticeVector>& ineqs, std::size_t q) {
    if (q == 0) return {};
    assert(!ineqs.empty()); // a pointed cone in positive rank needs inequalities
    std::set<LatticeVector> found;
    const std::size_t n = ineqs.size();
    const std::size_t k = q - 1;
    if (k > n) return {};
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    auto advance = [&]() -> bool {
        if (k == 0) return false;
        std::size_t i = k;
        while (i-- > 0) {
            if (idx[i] + (k - i) < n) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    bool more = true;
    while (more) {
        std::vector<LatticeVector> sub;
        sub.reserve(k);
        for (std::size_t i : idx) sub.push_back(ineqs[i]);
        auto ker = kernel_basis(IntMatrix::from_rows(sub, q));
        if (ker.size() == 1) {
            LatticeVector v = primitive_vector(ker[0]).first;
            bool nonneg = true, nonpos = true;
            for (const auto& a : ineqs) {
                const Int s = pair(a, v);
                if (s < 0) nonneg = false;
                if (s > 0) nonpos = false;
            }
            // nonneg && nonpos would mean v is orthogonal to every inequality,
            // impossible for a pointed cone.
            if (nonneg != nonpos) found.insert(nonneg ? v : neg(v));
        }
        more = advance();
    }
    return {found.begin(), found.end()};
}

struct VRep {
    std::vector<LatticeVector> rays;
    std::vector<LatticeVector> lineality;
};

// Exact inequality-to-generator conversion.  Works in three stages: restrict
// to the saturated solution lattice of the equations, split off the lineality
// of the restricted inequality system, and enumerate extreme rays of the
// remaining pointed quotient.
VRep h_to_v(std::size_t rank, const std::vector<LatticeVector>& ineqs,
            const std::vector<LatticeVector>& eqs) {
    VRep out;
    auto l0 = hermite_basis(kernel_basis(IntMatrix::from_rows(eqs, rank)), rank);
    const std::size_t t = l0.size();
    if (t == 0) return out;

    std::vector<LatticeVector> restricted;
    for (const auto& a : ineqs) {
        LatticeVector r(t);
        for (std::size_t i = 0; i < t; ++i) r[i] = pair(a, l0[i]);
        if (!is_zero(r)) restricted.push_back(primitive_vector(r).first);
    }
    restricted = sorted_unique(restricted);

    auto lin_t = hermite_basis(kernel_basis(IntMatrix::from_rows(restricted, t)), t);
    const std::size_t k = lin_t.size();
    for (const auto& v : lin_t) out.lineality.push_back(combine(v, l0, rank));
    out.lineality = hermite_basis(out.lineality, rank);
    if (k == t) return out;

    std::vector<LatticeVector> rays_t;
    if (k == 0) {
        rays_t = pointed_rays(restricted, t);
    } else {
        auto sq = sublattice_quotient(lin_t, t);
        const std::size_t q = t - k;
        std::vector<LatticeVector> descended;
        for (const auto& a : restricted) {
            LatticeVector ab(q);
            for (std::size_t j = 0; j < q; ++j) {
                Int acc = 0;
                for (std::size_t m = 0; m < t; ++m) acc += a[m] * sq.section.at(m, j);
                ab[j] = acc;
            }
            assert(!is_zero(ab)); // a vanishes on lin_t, so it cannot die on the complement
            descended.push_back(primitive_vector(ab).first);
        }
        descended = sorted_unique(descended);
        for (const auto& u : pointed_rays(descended, q)) rays_t.push_back(sq.section * u);
    }
    for (const auto& r : rays_t) out.rays.push_back(primitive_vector(combine(r, l0, rank)).first);
    out.rays = sorted_unique(out.rays);
    return out;
}

} // namespace

std::vector<LatticeVector> hermite_basis(const std::vector<LatticeVector>& rows,
                                         std::size_t ambient_rank) {
    std::vector<LatticeVector> w;
    for (const auto& r : rows) {
        if (r.size() != ambient_rank) fail(errc::rank_mismatch, "hermite_basis: row size mismatch");
        if (!is_zero(r)) w.push_back(r);
    }
    std::size_t r = 0;
    for (std::size_t col = 0; col < ambient_rank && r < w.size(); ++col) {
        // Repeatedly reduce the column below r by its smallest nonzero entry.
        while (true) {
            std::size_t piv = w.size();
            for (std::size_t i = r; i < w.size(); ++i) {
                if (w[i][col] == 0) continue;
                if (piv == w.size() || abs(w[i][col]) < abs(w[piv][col])) piv = i;
            }
            if (piv == w.size()) break; // column already zero below r
            std::swap(w[r], w[piv]);
            bool clean = true;
            for (std::size_t i = r + 1; i < w.size(); ++i) {
                if (w[i][col] == 0) continue;
                const Int q = w[i][col] / w[r][col]; // truncated division shrinks the entry
                if (q != 0)
                    for (std::size_t j = 0; j < ambient_rank; ++j) w[i][j] -= q * w[r][j];
                if (w[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (w[r][col] == 0) continue;
        if (w[r][col] < 0)
            for (std::size_t j = 0; j < ambient_rank; ++j) w[r][j] = -w[r][j];
        for (std::size_t i = 0; i < r; ++i) {
            const Int q = floor_div(w[i][col], w[r][col]);
            if (q != 0)
                for (std::size_t j = 0; j < ambient_rank; ++j) w[i][j] -= q * w[r][j];
        }
        ++r;
    }
    w.resize(r);
    return w;
}

Cone Cone::assemble(std::size_t rank, std::vector<LatticeVector> rays,
                    std::vector<LatticeVector> lineality, bool allow_lineality) {
    lineality = hermite_basis(lineality, rank);
    if (!lineality.empty() && !allow_lineality)
        fail(errc::not_strongly_convex, "cone contains a line");

    if (!lineality.empty() && !rays.empty()) {
        // Canonical representatives for the pointed part: take the primitive
        // image in the quotient by the lineality lattice and lift by the
        // fixed section, so the stored generators do not depend on which
        // representatives the caller produced.
        auto sq = sublattice_quotient(lineality, rank);
        std::set<LatticeVector> images;
        for (const auto& ray : rays) {
            LatticeVector u = sq.project(ray);
            assert(!chowfan::is_zero(u)); // rays from h_to_v never lie in the lineality
            images.insert(primitive_vector(u).first);
        }
        rays.clear();
        for (const auto& u : images) rays.push_back(sq.lift(u));
    } else {
        for (auto& ray : rays) ray = primitive_vector(ray).first;
        rays = sorted_unique(rays);
    }
    std::sort(rays.begin(), rays.end());

    std::vector<LatticeVector> gens_all = rays;
    append_negations(gens_all, lineality);
    auto ann = hermite_basis(kernel_basis(IntMatrix::from_rows(gens_all, rank)), rank);
    auto span_rows = hermite_basis(kernel_basis(IntMatrix::from_rows(ann, rank)), rank);

    Cone c;
    c.rank_ = rank;
    c.dim_ = span_rows.size();
    c.generators_ = std::move(rays);
    c.lineality_ = std::move(lineality);
    c.facets_ = facet_normals(gens_all, span_rows, rank);
    std::sort(ann.begin(), ann.end());
    c.span_equations_ = std::move(ann);

    for (const auto& g : c.generators_) assert(c.contains(g));
    for (const auto& l : c.lineality_) assert(c.contains(l) && c.contains(neg(l)));
    return c;
}

Cone Cone::from_rays(std::size_t rank, const std::vector<LatticeVector>& rays,
                     bool allow_lineality) {
    std::vector<LatticeVector> r;
    for (const auto& v : rays) {
        if (v.size() != rank) fail(errc::rank_mismatch, "from_rays: ray size mismatch");
        if (!chowfan::is_zero(v)) r.push_back(primitive_vector(v).first);
    }
    r = sorted_unique(r);
    auto ann = hermite_basis(kernel_basis(IntMatrix::from_rows(r, rank)), rank);
    auto span_rows = hermite_basis(kernel_basis(IntMatrix::from_rows(ann, rank)), rank);
    auto facets = facet_normals(r, span_rows, rank);
    VRep vr = h_to_v(rank, facets, ann);
    Cone c = assemble(rank, std::move(vr.rays), std::move(vr.lineality), allow_lineality);
    for (const auto& v : r) assert(c.contains(v));
    return c;
}

Cone Cone::from_inequalities(std::size_t rank, const std::vector<LatticeVector>& ineqs,
                             const std::vector<LatticeVector>& eqs, bool allow_lineality) {
    for (const auto& a : ineqs)
        if (a.size() != rank) fail(errc::rank_mismatch, "from_inequalities: row size mismatch");
    for (const auto& b : eqs)
        if (b.size() != rank) fail(errc::rank_mismatch, "from_inequalities: row size mismatch");
    VRep vr = h_to_v(rank, ineqs, eqs);
    Cone c = assemble(rank, std::move(vr.rays), std::move(vr.lineality), allow_lineality);
    auto satisfied = [&](const LatticeVector& x) {
        for (const auto& a : ineqs)
            if (pair(a, x) < 0) return false;
        for (const auto& b : eqs)
            if (pair(b, x) != 0) return false;
        return true;
    };
    for (const auto& g : c.generators_) assert(satisfied(g));
    for (const auto& l : c.lineality_) assert(satisfied(l) && satisfied(neg(l)));
    return c;
}

bool Cone::contains(const LatticeVector& p) const { return contains(to_rational(p)); }

bool Cone::contains(const RationalVector& p) const {
    if (p.size() != rank_) fail(errc::rank_mismatch, "contains: point size mismatch");
    for (const auto& e : span_equations_)
        if (pair(e, p) != 0) return false;
    for (const auto& f : facets_)
        if (pair(f, p) < 0) return false;
    return true;
}

bool Cone::contains_relint(const RationalVector& p) const {
    if (p.size() != rank_) fail(errc::rank_mismatch, "contains_relint: point size mismatch");
    for (const auto& e : span_equations_)
        if (pair(e, p) != 0) return false;
    for (const auto& f : facets_)
        if (pair(f, p) <= 0) return false;
    return true;
}

bool Cone::contains_cone(const Cone& other) const {
    if (other.rank_ != rank_) fail(errc::rank_mismatch, "contains_cone: rank mismatch");
    for (const auto& g : other.generators_)
        if (!contains(g)) return false;
    for (const auto& l : other.lineality_)
        if (!contains(l) || !contains(neg(l))) return false;
    return true;
}

LatticeVector Cone::relint_point() const {
    LatticeVector p(rank_, Int(0));
    for (const auto& g : generators_) p = add(p, g);
    return p;
}

std::string Cone::canonical_key() const {
    std::ostringstream os;
    os << "rk" << rank_ << ";g";
    for (const auto& g : generators_) os << to_string(g);
    os << ";l";
    for (const auto& l : lineality_) os << to_string(l);
    return os.str();
}

bool Cone::operator<(const Cone& o) const {
    if (rank_ != o.rank_) return rank_ < o.rank_;
    if (dim_ != o.dim_) return dim_ < o.dim_;
    if (generators_ != o.generators_) return generators_ < o.generators_;
    return lineality_ < o.lineality_;
}

Cone dual_cone(const Cone& c) {
    return Cone::from_inequalities(c.rank(), c.generators(), c.lineality(), true);
}

Cone intersect(const Cone& a, const Cone& b) {
    if (a.rank() != b.rank()) fail(errc::rank_mismatch, "intersect: rank mismatch");
    std::vector<LatticeVector> ineqs = a.facets();
    ineqs.insert(ineqs.end(), b.facets().begin(), b.facets().end());
    std::vector<LatticeVector> eqs = a.span_equations();
    eqs.insert(eqs.end(), b.span_equations().begin(), b.span_equations().end());
    return Cone::from_inequalities(a.rank(), ineqs, eqs, true);
}

Cone minimal_face_containing(const Cone& c, const RationalVector& p) {
    if (!c.contains(p)) fail(errc::not_in_cone, "minimal_face_containing: point outside cone");
    std::vector<LatticeVector> eqs = c.span_equations();
    for (const auto& f : c.facets())
        if (pair(f, p) == 0) eqs.push_back(f);
    return Cone::from_inequalities(c.rank(), c.facets(), eqs, !c.is_pointed());
}

std::vector<Cone> all_faces(const Cone& c) {
    const auto& fs = c.facets();
    assert(fs.size() < 24); // desk-scale guard against exponential blowup
    std::set<Cone> faces;
    for (std::size_t mask = 0; mask < (std::size_t(1) << fs.size()); ++mask) {
        std::vector<LatticeVector> eqs = c.span_equations();
        for (std::size_t i = 0; i < fs.size(); ++i)
            if (mask & (std::size_t(1) << i)) eqs.push_back(fs[i]);
        faces.insert(Cone::from_inequalities(c.rank(), fs, eqs, !c.is_pointed()));
    }
    return {faces.begin(), faces.end()};
}

RatInterval segment_in_cone(const Cone& c, const RationalVector& base, const LatticeVector& dir) {
    if (base.size() != c.rank() || dir.size() != c.rank())
        fail(errc::rank_mismatch, "segment_in_cone: size mismatch");
    if (is_zero(dir)) fail(errc::zero_vector, "segment_in_cone: zero direction");

    std::optional<Rat> lo, hi;
    bool feasible = true;
    auto require_ge = [&](const Rat& a, const Rat& b) {
        // a + t*b >= 0
        if (b == 0) {
            if (a < 0) feasible = false;
        } else if (b > 0) {
            Rat bound = -a / b;
            if (!lo || bound > *lo) lo = bound;
        } else {
            Rat bound = -a / b;
            if (!hi || bound < *hi) hi = bound;
        }
    };
    for (const auto& e : c.span_equations()) {
        const Rat a = pair(e, base);
        const Rat b = pair(e, to_rational(dir));
        require_ge(a, b);
        require_ge(-a, -b);
    }
    for (const auto& f : c.facets()) require_ge(pair(f, base), pair(f, to_rational(dir)));

    if (!feasible || (lo && hi && *lo > *hi)) return RatInterval::none();
    RatInterval out;
    out.empty = false;
    out.lo = lo;
    out.hi = hi;
    return out;
}

} // namespace chowfan
