#include "chowfan/chow.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <tuple>

namespace chowfan {

namespace {

void require_direction(const Fan& f, const LatticeVector& n0) {
    if (n0.size() != f.rank()) fail(errc::rank_mismatch, "direction has wrong rank");
    if (is_zero(n0)) fail(errc::direction_zero, "subtorus direction must be nonzero");
    if (content(n0) != 1) {
        fail(errc::not_primitive, "subtorus direction " + to_string(n0) + " is imprimitive");
    }
    if (!f.is_complete()) fail(errc::not_complete, "fan is not complete");
}

// Coordinates of target in the span of independent generators, solved exactly
// over the rationals; fails the surrounding assertion if target is outside.
std::vector<Rat> rational_coordinates(const std::vector<LatticeVector>& gens,
                                      const LatticeVector& target, std::size_t rank) {
    std::size_t k = gens.size();
    std::vector<std::vector<Rat>> m(rank, std::vector<Rat>(k + 1));
    for (std::size_t i = 0; i < rank; ++i) {
        for (std::size_t j = 0; j < k; ++j) m[i][j] = Rat(gens[j][i]);
        m[i][k] = Rat(target[i]);
    }
    std::vector<std::size_t> pivot_row(k, rank);
    std::size_t r = 0;
    for (std::size_t j = 0; j < k && r < rank; ++j) {
        std::size_t p = r;
        while (p < rank && m[p][j] == 0) ++p;
        if (p == rank) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < rank; ++i) {
            if (i == r || m[i][j] == 0) continue;
            Rat factor = m[i][j] / m[r][j];
            for (std::size_t c = j; c <= k; ++c) m[i][c] -= factor * m[r][c];
        }
        pivot_row[j] = r;
        ++r;
    }
    std::vector<Rat> x(k, Rat(0));
    for (std::size_t j = 0; j < k; ++j) {
        assert(pivot_row[j] < rank && "generators are not independent");
        x[j] = m[pivot_row[j]][k] / m[pivot_row[j]][j];
    }
    for (std::size_t i = r; i < rank; ++i) {
        assert(m[i][k] == 0 && "target outside the span of the generators");
    }
    return x;
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Deterministic pseudo-random point in the relative interior, seeded from the
// canonical cone form so reports are reproducible byte for byte.
RationalVector seeded_sample(const Cone& c, std::size_t index) {
    std::mt19937_64 rng(fnv1a64(c.canonical_key() + "#" + std::to_string(index)));
    RationalVector s(c.rank(), Rat(0));
    for (const auto& g : c.generators()) {
        Rat coeff(int(1 + rng() % 8), int(1 + rng() % 4));
        s = add(s, scale(coeff, to_rational(g)));
    }
    return s;
}

} // namespace

bool is_smooth(const Fan& f) {
    for (const auto& sigma : f.maximal_cones()) {
        if (sigma.generators().size() != sigma.dim()) return false;
        auto snf = smith_normal_form(IntMatrix::from_rows(sigma.generators(), f.rank()));
        for (std::size_t i = 0; i < sigma.dim(); ++i) {
            if (snf.D.at(i, i) != 1) return false;
        }
    }
    return true;
}

DiscreteData contact_orders(const Fan& f, const LatticeVector& n0) {
    require_direction(f, n0);

    auto make_contact = [&](const LatticeVector& mu) {
        const Cone& anchor = f.minimal_cone_containing(to_rational(mu));
        if (anchor.generators().size() != anchor.dim()) {
            fail(errc::non_simplicial_anchor,
                 "minimal cone containing " + to_string(mu) + " is not simplicial");
        }
        auto coeffs = rational_coordinates(anchor.generators(), mu, f.rank());
        std::map<LatticeVector, Rat> tangency;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            assert(coeffs[i] > 0 && "direction not in the relative interior of its anchor");
            tangency[anchor.generators()[i]] = coeffs[i];
        }
        return ContactOrder{mu, std::move(tangency), anchor};
    };
    ContactOrder c0 = make_contact(n0);
    ContactOrder cinf = make_contact(neg(n0));

    // Consistency with the monomial map t ↦ λ^{n0}(t): every generator of the
    // anchor's sharp dual monoid must have positive vanishing order ⟨e, μ⟩,
    // and the unit directions must pair to zero.  (The sharp generators are
    // only enumerable up to rank 3; larger anchors skip the cross-check.)
    for (const ContactOrder* c : {&c0, &cinf}) {
        const Cone& tau = c->anchor_cone;
        if (tau.dim() > 3) continue;
        GhostStalk gs = ghost_stalk(f, tau);
        for (const auto& u : gs.units_lattice) {
            assert(pair(u, c->direction) == 0);
        }
        if (tau.is_full_dimensional()) {
            for (const auto& e : gs.monoid.generators) {
                assert(pair(e, c->direction) > 0);
            }
        } else if (tau.dim() > 0) {
            auto sq = sublattice_quotient(gs.units_lattice, f.rank());
            for (const auto& e : gs.monoid.generators) {
                assert(pair(sq.lift(e), c->direction) > 0);
            }
        }
    }

    std::map<LatticeVector, Rat> beta;
    for (const auto& ray : f.rays()) {
        Rat b(0);
        if (auto it = c0.tangency.find(ray); it != c0.tangency.end()) b += it->second;
        if (auto it = cinf.tangency.find(ray); it != cinf.tangency.end()) b += it->second;
        beta[ray] = b;
    }
    return DiscreteData{n0, std::move(c0), std::move(cinf), std::move(beta)};
}

ChainLogMap trace_chain(const Fan& f, const LatticeVector& n0, const RationalVector& x_prime) {
    require_direction(f, n0);
    auto proj = quotient_lattice(n0);
    if (x_prime.size() != proj.target_rank) {
        fail(errc::rank_mismatch, "quotient point has wrong rank");
    }
    RationalVector base = proj.lift(x_prime);
    RationalVector dir = to_rational(n0);
    auto at = [&](const Rat& t) { return add(base, scale(t, dir)); };

    // Candidate breakpoints: finite endpoints of the parameter intervals the
    // line spends inside each maximal cone.  Every genuine breakpoint of the
    // minimal-cone map is such an endpoint, because a maximal cone covering a
    // neighborhood of a parameter forces the minimal cone to be locally
    // constant (the minimal face along an interior segment is constant).
    std::vector<Rat> cand;
    for (const auto& sigma : f.maximal_cones()) {
        RatInterval iv = segment_in_cone(sigma, base, n0);
        if (iv.empty) continue;
        if (iv.lo) cand.push_back(*iv.lo);
        if (iv.hi) cand.push_back(*iv.hi);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    assert(!cand.empty() && "a complete fan always breaks the line");

    // A candidate is genuine iff the minimal cone jumps there; comparing with
    // the interval just left of it suffices, since equality on the left would
    // make the relative-interior membership locally open on both sides.
    std::vector<Rat> breaks;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        Rat left = (i == 0) ? Rat(cand[0] - 1) : Rat((cand[i - 1] + cand[i]) / 2);
        if (!(f.minimal_cone_containing(at(left)) == f.minimal_cone_containing(at(cand[i])))) {
            breaks.push_back(cand[i]);
        }
    }
    assert(!breaks.empty() && "a strongly convex cone cannot absorb the whole line");

    TropicalCurve t;
    t.rank = f.rank();
    std::vector<Cone> vertex_cones;
    for (const auto& b : breaks) {
        RationalVector p = at(b);
        t.vertices.push_back({p});
        vertex_cones.push_back(f.minimal_cone_containing(p));
    }
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        t.bounded_edges.push_back({i, i + 1, 1, n0, breaks[i + 1] - breaks[i]});
    }
    t.unbounded_edges.push_back({breaks.size() - 1, 1, n0, "0"});
    t.unbounded_edges.push_back({0, 1, neg(n0), "∞"});
    validate_curve(t);
    assert(is_balanced(t));
    return ChainLogMap{std::move(t), std::move(vertex_cones), n0};
}

bool chain_shape_ok(const ChainLogMap& c) {
    const TropicalCurve& t = c.curve;
    if (t.vertices.empty() || t.bounded_edges.size() + 1 != t.vertices.size()) return false;
    std::vector<int> degree(t.vertices.size(), 0);
    for (const auto& e : t.bounded_edges) {
        if (e.tail == e.head) return false;
        ++degree[e.tail];
        ++degree[e.head];
        if (e.weight != 1) return false;
        if (e.direction != c.direction && e.direction != neg(c.direction)) return false;
    }
    for (int dv : degree) {
        if (dv > 2) return false;
    }
    if (t.unbounded_edges.size() != 2) return false;
    bool zero_end = false, infinity_end = false;
    for (const auto& e : t.unbounded_edges) {
        if (e.weight != 1) return false;
        if (e.direction == c.direction && e.marker == "0") zero_end = true;
        else if (e.direction == neg(c.direction) && e.marker == "∞") infinity_end = true;
        else return false;
    }
    return zero_end && infinity_end;
}

std::string chain_type(const ChainLogMap& c) {
    return canonical_type(c.curve, c.vertex_cones);
}

ToricCycle cycle_of_chain(const ChainLogMap& c) {
    std::size_t d = c.direction.size();
    // Key: (mobile?, stratum, sweep direction); multiplicities aggregate.
    std::map<std::tuple<bool, Cone, LatticeVector>, Int> agg;
    for (const auto& tau : c.vertex_cones) {
        Int mult;
        if (tau.dim() == 0) {
            mult = content(c.direction);
        } else {
            auto span_basis = kernel_basis(IntMatrix::from_rows(tau.span_equations(), d));
            auto sq = sublattice_quotient(span_basis, d);
            mult = content(sq.project(c.direction));
        }
        assert(mult >= 1 && "chain directions never lie in a vertex cone's span");
        bool mobile = tau.dim() + 1 != d;
        LatticeVector u = mobile ? lex_normalize(c.direction) : LatticeVector{};
        agg[{mobile, tau, u}] += mult;
    }
    ToricCycle cyc;
    for (auto& [key, mult] : agg) {
        cyc.terms.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), mult});
    }
    return cyc;
}

std::map<LatticeVector, Rat> class_degrees(const Fan& f, const ToricCycle& cyc) {
    if (!f.is_complete()) fail(errc::not_complete, "class degrees need a complete fan");
    if (!is_smooth(f)) fail(errc::not_smooth, "class degrees need a smooth fan");
    std::map<LatticeVector, Rat> deg;
    for (const auto& ray : f.rays()) deg[ray] = Rat(0);

    for (const auto& term : cyc.terms) {
        if (term.mobile) {
            fail(errc::mobile_term_present, "mobile cycle terms have no invariant class");
        }
        const Cone& tau = term.stratum;
        if (tau.dim() + 1 != f.rank() || !f.contains_cone(tau)) {
            fail(errc::cone_not_in_fan, "cycle term " + tau.canonical_key() + " is not a wall");
        }
        // The two maximal cones adjacent to the wall, and their extra rays.
        std::vector<LatticeVector> extras;
        std::set<LatticeVector> wall_rays(tau.generators().begin(), tau.generators().end());
        for (const auto& sigma : f.maximal_cones()) {
            if (!sigma.contains_cone(tau)) continue;
            for (const auto& g : sigma.generators()) {
                if (!wall_rays.count(g)) extras.push_back(g);
            }
        }
        assert(extras.size() == 2 && "every wall of a complete fan joins two cones");
        // Wall relation u1 + u2 + Σ c_w w = 0 determines all intersection
        // numbers of V(tau): 1 against the extras, c_w against the wall rays.
        LatticeVector s = add(extras[0], extras[1]);
        auto coeffs = rational_coordinates(tau.generators(), s, f.rank());
        Rat a(term.multiplicity);
        deg[extras[0]] += a;
        deg[extras[1]] += a;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            deg[tau.generators()[i]] += a * (-coeffs[i]);
        }
    }
    return deg;
}

QuotientFanResult quotient_fan(const Fan& f, const LatticeVector& n0) {
    require_direction(f, n0);
    std::size_t d = f.rank();
    auto proj = quotient_lattice(n0);
    std::size_t q = d - 1;

    Fan qfan;
    if (d == 1) {
        // N' is the rank-0 lattice; the quotient fan is the single point.
        qfan = Fan::from_cones(0, {Cone::zero(0)});
    } else {
        // Project every cone; full-dimensional images drive the membership
        // signature, lower-dimensional images contribute their span walls.
        std::set<Cone> images;
        for (const auto& c : f.all_cones()) {
            std::vector<LatticeVector> pg;
            for (const auto& g : c.generators()) {
                LatticeVector v = proj.project(g);
                if (!chowfan::is_zero(v)) pg.push_back(std::move(v));
            }
            images.insert(Cone::from_rays(q, pg, true));
        }
        std::vector<Cone> full_dim;
        std::set<LatticeVector> hset;
        for (const auto& c : images) {
            for (const auto& h : c.facets()) hset.insert(lex_normalize(h));
            if (c.dim() == q) {
                full_dim.push_back(c);
            } else {
                for (const auto& h : c.span_equations()) hset.insert(lex_normalize(h));
            }
        }
        assert(!hset.empty() && "projections of a complete fan always produce walls");

        // Chambers of the central arrangement, by incremental splitting.
        std::vector<std::vector<LatticeVector>> chambers = {{}};
        for (const auto& h : hset) {
            std::vector<std::vector<LatticeVector>> next;
            for (const auto& ch : chambers) {
                auto plus = ch;
                plus.push_back(h);
                auto minus = ch;
                minus.push_back(neg(h));
                if (Cone::from_inequalities(q, plus, {}, true).dim() == q &&
                    Cone::from_inequalities(q, minus, {}, true).dim() == q) {
                    next.push_back(std::move(plus));
                    next.push_back(std::move(minus));
                } else {
                    next.push_back(ch);
                }
            }
            chambers = std::move(next);
        }
        std::vector<Cone> cells;
        std::vector<LatticeVector> cell_samples;
        for (const auto& ch : chambers) {
            cells.push_back(Cone::from_inequalities(q, ch, {}, true));
            cell_samples.push_back(cells.back().relint_point());
        }

        // Merge chambers with identical membership in the full-dimensional
        // projected cones; the merged regions are exactly the maximal cones
        // of the common refinement.
        std::map<std::vector<bool>, std::vector<std::size_t>> groups;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            std::vector<bool> sig(full_dim.size());
            for (std::size_t j = 0; j < full_dim.size(); ++j) {
                sig[j] = full_dim[j].contains(cell_samples[i]);
            }
            groups[sig].push_back(i);
        }
        std::vector<Cone> merged;
        for (const auto& [sig, members] : groups) {
            std::vector<LatticeVector> gens;
            std::vector<char> in_group(cells.size(), 0);
            for (std::size_t i : members) {
                in_group[i] = 1;
                const Cone& c = cells[i];
                gens.insert(gens.end(), c.generators().begin(), c.generators().end());
                for (const auto& l : c.lineality()) {
                    gens.push_back(l);
                    gens.push_back(neg(l));
                }
            }
            Cone m = Cone::from_rays(q, gens, true);
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (!in_group[i] && m.contains(cell_samples[i])) {
                    fail(errc::merge_not_convex,
                         "merged region absorbs a chamber with a different signature");
                }
            }
            merged.push_back(std::move(m));
        }
        qfan = Fan::from_cones(q, merged);
        assert(qfan.is_complete());
    }

    QuotientFanResult res{std::move(proj), std::move(qfan), {}, {}};
    for (const auto& c : res.fan.all_cones()) {
        RationalVector s = seeded_sample(c, 0);
        res.cone_types.push_back(chain_type(trace_chain(f, n0, s)));
        res.sample_points.push_back(std::move(s));
    }
    return res;
}

std::vector<MonomialChart> reconstruct_nondegenerate(const Fan& f, const LatticeVector& n0) {
    require_direction(f, n0);
    std::vector<MonomialChart> charts;
    for (const auto& sigma : f.maximal_cones()) {
        if (!sigma.contains(n0)) continue;
        AffineMonoid dual = monoid_generators(dual_cone(sigma));
        std::vector<Int> exponents;
        for (const auto& e : dual.generators) {
            Int v = pair(e, n0);
            assert(v >= 0 && "dual generators are nonnegative on the cone");
            exponents.push_back(std::move(v));
        }
        charts.push_back({sigma, dual.generators, std::move(exponents)});
    }
    assert(!charts.empty() && "a complete fan covers the direction");
    return charts;
}

StrataReport enumerate_strata(const Fan& f, const LatticeVector& n0,
                              std::size_t samples_per_cone) {
    if (samples_per_cone == 0) samples_per_cone = 1;

    std::optional<DiscreteData> discrete;
    bool non_simplicial = false;
    try {
        discrete = contact_orders(f, n0);
    } catch (const error& e) {
        if (e.code() != errc::non_simplicial_anchor) throw;
        non_simplicial = true;
    }

    QuotientFanResult qr = quotient_fan(f, n0);
    bool smooth = is_smooth(f);

    std::vector<StratumEntry> entries;
    const auto& cones = qr.fan.all_cones();
    for (std::size_t i = 0; i < cones.size(); ++i) {
        StratumEntry e;
        e.cone = cones[i];
        e.sample = qr.sample_points[i];
        e.chain = trace_chain(f, n0, e.sample);
        e.type_key = qr.cone_types[i];
        e.balanced = is_balanced(e.chain.curve);
        e.chain_shape = chain_shape_ok(e.chain);
        e.type_constant = true;
        for (std::size_t j = 1; j < samples_per_cone; ++j) {
            ChainLogMap other = trace_chain(f, n0, seeded_sample(cones[i], j));
            e.balanced = e.balanced && is_balanced(other.curve);
            e.chain_shape = e.chain_shape && chain_shape_ok(other);
            if (chain_type(other) != e.type_key) e.type_constant = false;
        }
        e.cycle = cycle_of_chain(e.chain);
        bool invariant_only = std::none_of(e.cycle.terms.begin(), e.cycle.terms.end(),
                                           [](const CycleTerm& t) { return t.mobile; });
        if (smooth && invariant_only) {
            e.degrees = class_degrees(f, e.cycle);
            e.has_degrees = true;
            if (discrete) {
                e.conservation_applicable = true;
                e.conservation = e.degrees == discrete->degree_vector;
            }
        }
        entries.push_back(std::move(e));
    }

    std::map<std::string, int> type_count;
    for (const auto& e : entries) {
        if (e.cone.dim() == qr.fan.rank()) ++type_count[e.type_key];
    }
    bool duplicates = std::any_of(type_count.begin(), type_count.end(),
                                  [](const auto& kv) { return kv.second > 1; });

    return StrataReport{n0,
                        std::move(qr.projection),
                        std::move(qr.fan),
                        smooth,
                        std::move(discrete),
                        non_simplicial,
                        samples_per_cone,
                        std::move(entries),
                        duplicates};
}

} // namespace chowfan
