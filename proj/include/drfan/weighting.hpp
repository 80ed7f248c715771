#pragma once

// Integer weightings (flows) on a leg-weighted graph.
//
// A weighting assigns an integer to every half-edge such that the two halves
// of an edge carry opposite values and, at every vertex v, the values at v plus
// k * kappa(v) sum to zero. Legs carry their prescribed weights.
//
// Sign conventions: the value of a directed edge (given by its source half) is
// the value on that half. The flow of an edge in its canonical orientation is
// the value on its target half, so "flow a from u to v" puts +a at v's half.

#include "drfan/graph.hpp"

#include <optional>
#include <vector>

namespace drfan {

class Weighting {
public:
    Weighting() = default;
    explicit Weighting(IntVector values)
        : values_(std::move(values))
    {
    }

    const IntVector& values() const { return values_; }
    const Integer& operator[](HalfEdgeId h) const { return values_[h]; }
    std::size_t size() const { return values_.size(); }

    bool operator==(const Weighting&) const = default;

private:
    IntVector values_;
};

/// Flow along edge e in its canonical orientation.
inline Integer flow(const Graph& g, const Weighting& w, EdgeId e)
{
    return w[g.edge(e).target];
}

inline IntVector flows(const Graph& g, const Weighting& w)
{
    IntVector f;
    f.reserve(g.edge_count());
    for (const Edge& e : g.edges())
        f.push_back(w[e.target]);
    return f;
}

/// The candidate values determined by edge flows and the graph's leg weights.
/// The result need not satisfy the vertex condition; check with is_weighting.
inline Weighting weighting_from_flows(const Graph& g, const IntVector& edge_flows)
{
    if (edge_flows.size() != g.edge_count())
        throw Error(ErrorKind::MissingHalfEdge, "expected " + std::to_string(g.edge_count()) + " flows");
    IntVector v(g.half_edge_count(), 0);
    for (const Edge& e : g.edges()) {
        v[e.target] = edge_flows[e.id];
        v[e.source] = -edge_flows[e.id];
    }
    for (HalfEdgeId h : g.legs())
        v[h] = g.leg_weight(h);
    return Weighting(std::move(v));
}

struct WeightingCheck {
    bool ok = false;
    bool opposite_halves = false; // condition (1)
    bool legs_match = false;
    IntVector defects;            // per vertex: sum of values at v + k * kappa(v)

    explicit operator bool() const { return ok; }
};

inline WeightingCheck is_weighting(const Graph& g, const IntVector& values)
{
    if (values.size() != g.half_edge_count())
        throw Error(ErrorKind::MissingHalfEdge,
                    "expected " + std::to_string(g.half_edge_count()) + " values, got " + std::to_string(values.size()));
    WeightingCheck c;
    c.opposite_halves = std::all_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
        return values[e.source] == -values[e.target];
    });
    c.legs_match = std::all_of(g.legs().begin(), g.legs().end(),
                               [&](HalfEdgeId h) { return values[h] == g.leg_weight(h); });
    c.defects.assign(g.vertex_count(), 0);
    bool balanced = true;
    for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
        Integer s = g.twist() * canonical_degree(g, v);
        for (HalfEdgeId h : g.halves_at(v))
            s += values[h];
        balanced = balanced && s.is_zero();
        c.defects[v] = std::move(s);
    }
    c.ok = c.opposite_halves && c.legs_match && balanced;
    return c;
}

inline WeightingCheck is_weighting(const Graph& g, const Weighting& w)
{
    return is_weighting(g, w.values());
}

/// The weighting with zero flow off the DFS spanning tree; tree flows are
/// solved from the leaves up.
inline Weighting base_weighting(const Graph& g)
{
    SpanningTree tree = spanning_tree(g);
    IntVector v(g.half_edge_count(), 0);
    for (HalfEdgeId h : g.legs())
        v[h] = g.leg_weight(h);
    // reverse preorder visits children before parents
    for (auto it = tree.preorder.rbegin(); it != tree.preorder.rend(); ++it) {
        VertexId x = *it;
        HalfEdgeId up = tree.parent_half[x];
        if (up < 0)
            continue;
        Integer s = g.twist() * canonical_degree(g, x);
        for (HalfEdgeId h : g.halves_at(x))
            if (h != up)
                s += v[h];
        v[up] = -s;
        v[g.partner(up)] = s;
    }
    return Weighting(std::move(v));
}

/// Adds sum_b coeffs[b] * b to the values on directed edges: for each basis
/// cycle b and each directed edge h of b, value(h) grows by coeffs[b] and the
/// opposite half shrinks by the same amount.
inline Weighting shift_by_cycles(const Graph& g, const Weighting& w, const std::vector<Cycle>& basis,
                                 const IntVector& coeffs)
{
    IntVector v = w.values();
    for (std::size_t b = 0; b < basis.size(); ++b) {
        if (coeffs[b].is_zero())
            continue;
        for (HalfEdgeId h : basis[b].edges) {
            v[h] += coeffs[b];
            v[g.partner(h)] -= coeffs[b];
        }
    }
    return Weighting(std::move(v));
}

inline Weighting shift_by_cycles(const Graph& g, const Weighting& w, const IntVector& coeffs)
{
    return shift_by_cycles(g, w, cycle_basis(g), coeffs);
}

/// Carries values over to the surviving half-edges of a contraction.
inline Weighting restrict_weighting(const Graph& g, const Weighting& w, const ContractionResult& c)
{
    IntVector v(c.contracted.half_edge_count(), 0);
    for (HalfEdgeId h = 0; h < static_cast<HalfEdgeId>(g.half_edge_count()); ++h)
        if (c.half_map[h] >= 0)
            v[c.half_map[h]] = w[h];
    return Weighting(std::move(v));
}

/// A directed cycle along which every directed edge carries a positive value,
/// found by DFS in the digraph of positive half-edges (arc end(h) -> end(i(h))).
/// Vertices and half-edges are tried in increasing id; the cycle starts at the
/// vertex where it was closed.
inline std::optional<Cycle> find_positive_cycle(const Graph& g, const Weighting& w)
{
    const int nv = static_cast<int>(g.vertex_count());
    enum class Mark { White, Grey, Black };
    std::vector<Mark> mark(nv, Mark::White);
    std::vector<HalfEdgeId> path; // directed edges from the DFS root

    struct Frame {
        VertexId v;
        std::size_t next;
    };
    for (VertexId root = 0; root < nv; ++root) {
        if (mark[root] != Mark::White)
            continue;
        std::vector<Frame> stack{{root, 0}};
        mark[root] = Mark::Grey;
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& halves = g.halves_at(f.v);
            if (f.next == halves.size()) {
                mark[f.v] = Mark::Black;
                stack.pop_back();
                if (!path.empty())
                    path.pop_back();
                continue;
            }
            HalfEdgeId h = halves[f.next++];
            if (g.is_leg(h) || w[h].sign() <= 0)
                continue;
            VertexId u = g.end(g.partner(h));
            if (mark[u] == Mark::Grey) {
                // close the cycle at u
                std::vector<HalfEdgeId> cyc;
                std::size_t i = 0;
                while (i < path.size() && g.end(path[i]) != u)
                    ++i;
                cyc.assign(path.begin() + static_cast<std::ptrdiff_t>(i), path.end());
                cyc.push_back(h);
                return make_cycle(g, std::move(cyc));
            }
            if (mark[u] == Mark::White) {
                mark[u] = Mark::Grey;
                path.push_back(h);
                stack.push_back({u, 0});
            }
        }
    }
    return std::nullopt;
}

/// True iff every directed edge of c carries a positive value.
inline bool is_positive_cycle(const Weighting& w, const Cycle& c)
{
    return std::all_of(c.edges.begin(), c.edges.end(), [&](HalfEdgeId h) { return w[h].sign() > 0; });
}

/// phi(0) = 1, phi(n) = sum_{j<n} phi(j).
inline Integer phi(int n)
{
    std::vector<Integer> p{1};
    for (int i = 1; i <= n; ++i) {
        Integer s = 0;
        for (const auto& x : p)
            s += x;
        p.push_back(s);
    }
    return p[n];
}

/// N = m * phi(h), with m the largest |value| on an edge and h the first
/// Betti number. Every shift of `w` by a basis-coefficient vector of
/// sup-norm > N admits a positive cycle.
inline Integer enumeration_bound(const Graph& g, const Weighting& w)
{
    Integer m = 0;
    for (const Edge& e : g.edges())
        m = std::max(m, Integer(abs(w[e.source])));
    return m * phi(first_betti_number(g));
}

/// Inverse of restriction across the contraction of a single cycle: a
/// weighting on `g` restricting to `child` (a weighting on c.contracted) for
/// which `cycle` is positive. `c` must contract exactly the edges of `cycle`.
inline Weighting lift_through_cycle(const Graph& g, const ContractionResult& c, const Weighting& child,
                                    const Cycle& cycle)
{
    IntVector v(g.half_edge_count(), 0);
    for (HalfEdgeId h = 0; h < static_cast<HalfEdgeId>(g.half_edge_count()); ++h)
        if (c.half_map[h] >= 0)
            v[h] = child[c.half_map[h]];

    // With x_i the source of the i-th directed edge d_i and a_i the known part
    // of the balance at x_i, balance reads a_i + f_i - f_{i-1} = 0 for
    // f_i = value(d_i). The a_i sum to zero since the merged vertex balances.
    const auto& dir = cycle.edges;
    IntVector f(dir.size());
    Integer running = 0;
    for (std::size_t i = 0; i < dir.size(); ++i) {
        VertexId x = g.end(dir[i]);
        Integer a = g.twist() * canonical_degree(g, x);
        for (HalfEdgeId k : g.halves_at(x))
            if (c.half_map[k] >= 0)
                a += v[k];
        running -= a;
        f[i] = running;
    }
    if (!running.is_zero())
        throw Error(ErrorKind::ValidationError, "child weighting does not lift across the cycle");

    Integer lowest = *std::min_element(f.begin(), f.end());
    Integer shift = lowest.sign() > 0 ? Integer(0) : Integer(1 - lowest);
    for (std::size_t i = 0; i < dir.size(); ++i) {
        v[dir[i]] = f[i] + shift;
        v[g.partner(dir[i])] = -(f[i] + shift);
    }
    return Weighting(std::move(v));
}

} // namespace drfan
