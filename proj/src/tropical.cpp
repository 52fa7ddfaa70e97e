#include "chowfan/tropical.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace chowfan {

namespace {

void require_vertex(const TropicalCurve& t, std::size_t v, const char* where) {
    if (v >= t.vertices.size()) {
        fail(errc::malformed_input,
             std::string(where) + ": vertex index " + std::to_string(v) + " out of range");
    }
}

// position(head) - position(tail) as a rational vector.
RationalVector edge_displacement(const TropicalCurve& t, const BoundedEdge& e) {
    return sub(t.vertices[e.head].position, t.vertices[e.tail].position);
}

} // namespace

void validate_curve(const TropicalCurve& t) {
    if (t.vertices.empty()) fail(errc::malformed_input, "curve has no vertices");
    for (const auto& v : t.vertices) {
        if (v.position.size() != t.rank) fail(errc::rank_mismatch, "vertex position has wrong rank");
    }

    for (const auto& e : t.bounded_edges) {
        require_vertex(t, e.tail, "bounded edge");
        require_vertex(t, e.head, "bounded edge");
        if (e.direction.size() != t.rank) fail(errc::rank_mismatch, "edge direction has wrong rank");
        if (e.weight < 0) fail(errc::malformed_input, "negative edge weight");
        if (e.weight == 0) {
            // A contracted edge: both ends map to the same point, no direction.
            if (!is_zero(e.direction)) {
                fail(errc::malformed_input, "contracted edge with nonzero direction");
            }
            if (t.vertices[e.tail].position != t.vertices[e.head].position) {
                fail(errc::malformed_input, "contracted edge with distinct endpoint images");
            }
            continue;
        }
        if (e.tail == e.head) fail(errc::malformed_input, "non-contracted loop edge");
        if (content(e.direction) != e.weight) {
            fail(errc::malformed_input, "edge direction is not weight times a primitive vector");
        }
        if (e.length <= 0) fail(errc::malformed_input, "non-contracted edge with non-positive length");
        if (edge_displacement(t, e) != scale(e.length, to_rational(e.direction))) {
            fail(errc::malformed_input, "endpoint positions do not match length times direction");
        }
    }

    for (const auto& e : t.unbounded_edges) {
        require_vertex(t, e.vertex, "unbounded edge");
        if (e.direction.size() != t.rank) fail(errc::rank_mismatch, "edge direction has wrong rank");
        if (e.weight < 0) fail(errc::malformed_input, "negative edge weight");
        if (e.weight == 0 && !is_zero(e.direction)) {
            fail(errc::malformed_input, "contracted marked end with nonzero direction");
        }
        if (e.weight > 0 && content(e.direction) != e.weight) {
            fail(errc::malformed_input, "edge direction is not weight times a primitive vector");
        }
    }

    // Connectedness over the bounded edges (genus zero needs a tree, but the
    // chains produced here are paths; only connectedness is checked).
    std::vector<bool> seen(t.vertices.size(), false);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    seen[0] = true;
    while (!frontier.empty()) {
        std::size_t v = frontier.front();
        frontier.pop();
        for (const auto& e : t.bounded_edges) {
            std::size_t w = t.vertices.size();
            if (e.tail == v) w = e.head;
            else if (e.head == v) w = e.tail;
            if (w < t.vertices.size() && !seen[w]) {
                seen[w] = true;
                frontier.push(w);
            }
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        fail(errc::disconnected_graph, "curve graph is not connected");
    }
}

std::vector<LatticeVector> check_balancing(const TropicalCurve& t) {
    std::vector<LatticeVector> defect(t.vertices.size(), LatticeVector(t.rank, 0));
    // Every flag contributes its outgoing direction; a bounded edge points
    // out of the tail along +μ and out of the head along -μ.
    for (const auto& e : t.bounded_edges) {
        defect[e.tail] = add(defect[e.tail], e.direction);
        defect[e.head] = sub(defect[e.head], e.direction);
    }
    for (const auto& e : t.unbounded_edges) {
        defect[e.vertex] = add(defect[e.vertex], e.direction);
    }
    return defect;
}

bool is_balanced(const TropicalCurve& t) {
    for (const auto& d : check_balancing(t)) {
        if (!is_zero(d)) return false;
    }
    return true;
}

TropicalCurve trop_nondegenerate(std::size_t rank, const std::vector<ContactOrder>& contacts,
                                 std::vector<std::string> markers) {
    if (markers.empty()) {
        if (contacts.size() == 2) markers = {"0", "∞"};
        else markers.assign(contacts.size(), "");
    }
    if (markers.size() != contacts.size()) {
        fail(errc::malformed_input, "marker list does not match contact list");
    }
    TropicalCurve t;
    t.rank = rank;
    t.vertices.push_back({RationalVector(rank, Rat(0))});
    for (std::size_t i = 0; i < contacts.size(); ++i) {
        const auto& mu = contacts[i].direction;
        if (mu.size() != rank) fail(errc::rank_mismatch, "contact direction has wrong rank");
        t.unbounded_edges.push_back({0, content(mu), mu, markers[i]});
    }
    validate_curve(t);
    return t;
}

TropicalCurve trop_standard_log_point(std::size_t rank,
                                      const std::vector<RationalVector>& positions,
                                      const std::vector<LogPointEdge>& edges,
                                      const std::vector<EndContact>& contacts) {
    TropicalCurve t;
    t.rank = rank;
    for (const auto& p : positions) {
        if (p.size() != rank) fail(errc::rank_mismatch, "vertex position has wrong rank");
        t.vertices.push_back({p});
    }
    for (const auto& e : edges) {
        if (e.tail >= positions.size() || e.head >= positions.size()) {
            fail(errc::malformed_input, "edge endpoint out of range");
        }
        if (e.length <= 0) fail(errc::malformed_input, "edge length must be positive");
        RationalVector diff = sub(positions[e.head], positions[e.tail]);
        if (is_zero(diff)) {
            t.bounded_edges.push_back({e.tail, e.head, 0, LatticeVector(rank, 0), e.length});
            continue;
        }
        RationalVector q = scale(Rat(1) / e.length, diff);
        if (is_integral(q)) {
            LatticeVector mu = to_integral(q);
            t.bounded_edges.push_back({e.tail, e.head, content(mu), mu, e.length});
        } else {
            // Non-integral quotient: renormalize to the primitive direction
            // with weight one, stretching the length to compensate.
            auto [u, c] = primitive_direction(q);
            t.bounded_edges.push_back({e.tail, e.head, 1, u, e.length * c});
        }
    }
    for (const auto& ec : contacts) {
        if (ec.vertex >= positions.size()) fail(errc::malformed_input, "contact vertex out of range");
        const auto& mu = ec.contact.direction;
        if (mu.size() != rank) fail(errc::rank_mismatch, "contact direction has wrong rank");
        t.unbounded_edges.push_back({ec.vertex, content(mu), mu, ec.marker});
    }
    validate_curve(t);
    return t;
}

Int minimal_length_rescaling(const TropicalCurve& t) {
    Int l = 1;
    for (const auto& e : t.bounded_edges) {
        l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(e.length));
    }
    return l;
}

std::string canonical_type(const TropicalCurve& t, const std::vector<Cone>& vertex_cones) {
    if (vertex_cones.size() != t.vertices.size()) {
        fail(errc::malformed_input, "vertex cone list does not match vertex list");
    }

    // The curve must be a path: walk it from one endpoint to the other.
    std::vector<std::vector<std::size_t>> incident(t.vertices.size());
    for (std::size_t i = 0; i < t.bounded_edges.size(); ++i) {
        incident[t.bounded_edges[i].tail].push_back(i);
        incident[t.bounded_edges[i].head].push_back(i);
    }
    std::size_t start = t.vertices.size();
    for (std::size_t v = 0; v < t.vertices.size(); ++v) {
        if (incident[v].size() > 2) fail(errc::malformed_input, "curve is not a chain");
        if (incident[v].size() <= 1 && start == t.vertices.size()) start = v;
    }
    if (start == t.vertices.size()) fail(errc::malformed_input, "curve is not a chain");

    std::vector<std::size_t> order;
    std::size_t prev_edge = t.bounded_edges.size();
    std::size_t v = start;
    for (;;) {
        order.push_back(v);
        std::size_t next_edge = t.bounded_edges.size();
        for (std::size_t ei : incident[v]) {
            if (ei != prev_edge) next_edge = ei;
        }
        if (next_edge == t.bounded_edges.size()) break;
        const auto& e = t.bounded_edges[next_edge];
        v = (e.tail == v) ? e.head : e.tail;
        prev_edge = next_edge;
    }
    if (order.size() != t.vertices.size()) fail(errc::malformed_input, "curve is not a chain");

    auto vertex_block = [&](std::size_t w) {
        std::vector<std::string> ends;
        for (const auto& e : t.unbounded_edges) {
            if (e.vertex != w) continue;
            ends.push_back("(" + to_string(e.direction) + ";" + e.weight.str() + ";" + e.marker + ")");
        }
        std::sort(ends.begin(), ends.end());
        std::string s = "V[" + vertex_cones[w].canonical_key() + "]{";
        for (const auto& x : ends) s += x;
        return s + "}";
    };
    auto edge_block = [&](std::size_t from, std::size_t to) {
        for (const auto& e : t.bounded_edges) {
            if ((e.tail == from && e.head == to) || (e.tail == to && e.head == from)) {
                LatticeVector mu = (e.tail == from) ? e.direction : neg(e.direction);
                return "-E(" + to_string(mu) + ";" + e.weight.str() + ")-";
            }
        }
        fail(errc::malformed_input, "missing chain edge");
    };
    auto key_along = [&](const std::vector<std::size_t>& seq) {
        std::string s = vertex_block(seq[0]);
        for (std::size_t i = 1; i < seq.size(); ++i) {
            s += edge_block(seq[i - 1], seq[i]);
            s += vertex_block(seq[i]);
        }
        return s;
    };

    std::string forward = key_along(order);
    std::reverse(order.begin(), order.end());
    std::string backward = key_along(order);
    return std::min(forward, backward);
}

} // namespace chowfan
