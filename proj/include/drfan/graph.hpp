#pragma once

// Leg-weighted graphs in the half-edge formalism: vertices with genera, an
// involution on half-edges (fixed points are legs, 2-orbits are edges), integer
// weights on legs and a twist k.

#include "drfan/error.hpp"
#include "drfan/linalg.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace drfan {

using VertexId = int;
using HalfEdgeId = int;
using EdgeId = int;

/// Unvalidated graph data. Indices are dense: vertices 0..V-1, half-edges 0..H-1.
struct GraphData {
    std::vector<int> genus;             // per vertex
    std::vector<VertexId> end;          // per half-edge
    std::vector<HalfEdgeId> involution; // per half-edge
    std::map<HalfEdgeId, Integer> leg_weights;
    Integer twist = 0;

    bool operator==(const GraphData&) const = default;
};

enum class GraphViolation {
    MalformedInvolution,
    DanglingHalfEdge,
    LegWeightDomain,
    NegativeGenus,
    Disconnected,
    LegSumMismatch,
};

inline std::string to_string(GraphViolation v)
{
    switch (v) {
    case GraphViolation::MalformedInvolution: return "MalformedInvolution";
    case GraphViolation::DanglingHalfEdge: return "DanglingHalfEdge";
    case GraphViolation::LegWeightDomain: return "LegWeightDomain";
    case GraphViolation::NegativeGenus: return "NegativeGenus";
    case GraphViolation::Disconnected: return "Disconnected";
    case GraphViolation::LegSumMismatch: return "LegSumMismatch";
    }
    return "Unknown";
}

struct ValidationReport {
    struct Entry {
        GraphViolation violation;
        std::string detail;
    };
    std::vector<Entry> violations;

    bool ok() const { return violations.empty(); }
    bool has(GraphViolation v) const
    {
        return std::any_of(violations.begin(), violations.end(),
                           [v](const Entry& e) { return e.violation == v; });
    }
};

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n)
        : parent(n)
    {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    // keeps the smaller root, so the root of a class is its minimum
    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace detail

inline ValidationReport validate_graph(const GraphData& d)
{
    ValidationReport report;
    auto add = [&](GraphViolation v, std::string msg) { report.violations.push_back({v, std::move(msg)}); };

    const int nv = static_cast<int>(d.genus.size());
    const int nh = static_cast<int>(d.end.size());

    for (int v = 0; v < nv; ++v)
        if (d.genus[v] < 0)
            add(GraphViolation::NegativeGenus, "vertex " + std::to_string(v));

    bool ends_ok = true;
    for (int h = 0; h < nh; ++h) {
        if (d.end[h] < 0 || d.end[h] >= nv) {
            add(GraphViolation::DanglingHalfEdge, "half-edge " + std::to_string(h));
            ends_ok = false;
        }
    }

    bool involution_ok = static_cast<int>(d.involution.size()) == nh;
    if (!involution_ok) {
        add(GraphViolation::MalformedInvolution, "involution and end have different sizes");
    } else {
        for (int h = 0; h < nh; ++h) {
            int p = d.involution[h];
            if (p < 0 || p >= nh) {
                add(GraphViolation::MalformedInvolution, "half-edge " + std::to_string(h) + " maps out of range");
                involution_ok = false;
            } else if (d.involution[p] != h) {
                add(GraphViolation::MalformedInvolution,
                    "half-edge " + std::to_string(h) + " -> " + std::to_string(p) + " -> " +
                        std::to_string(d.involution[p]));
                involution_ok = false;
            }
        }
    }
    if (!involution_ok || !ends_ok)
        return report;

    for (int h = 0; h < nh; ++h) {
        bool leg = d.involution[h] == h;
        bool weighted = d.leg_weights.count(h) > 0;
        if (leg && !weighted)
            add(GraphViolation::LegWeightDomain, "leg " + std::to_string(h) + " has no weight");
        if (!leg && weighted)
            add(GraphViolation::LegWeightDomain, "half-edge " + std::to_string(h) + " is not a leg");
    }
    for (const auto& [h, w] : d.leg_weights)
        if (h < 0 || h >= nh)
            add(GraphViolation::LegWeightDomain, "weight on unknown half-edge " + std::to_string(h));

    if (nv == 0) {
        add(GraphViolation::Disconnected, "no vertices");
        return report;
    }
    detail::UnionFind uf(nv);
    int edges = 0;
    for (int h = 0; h < nh; ++h) {
        if (d.involution[h] > h) {
            uf.unite(d.end[h], d.end[d.involution[h]]);
            ++edges;
        }
    }
    std::set<int> roots;
    for (int v = 0; v < nv; ++v)
        roots.insert(uf.find(v));
    if (roots.size() != 1) {
        add(GraphViolation::Disconnected, std::to_string(roots.size()) + " components");
        return report;
    }

    Integer genus = edges - nv + 1;
    for (int g : d.genus)
        genus += g;
    Integer leg_sum = 0;
    for (const auto& [h, w] : d.leg_weights)
        leg_sum += w;
    Integer expected = -d.twist * (2 * genus - 2);
    if (leg_sum != expected)
        add(GraphViolation::LegSumMismatch,
            "legs sum to " + leg_sum.str() + ", expected " + expected.str());
    return report;
}

/// An edge in its canonical orientation: `source` is the smaller half-edge id.
struct Edge {
    EdgeId id;
    HalfEdgeId source;
    HalfEdgeId target;
};

/// A validated, immutable leg-weighted graph. Edge ids are dense and ordered
/// by the smaller half-edge of each edge.
class Graph {
public:
    /// Throws Error(InvalidGraph) naming the first violated invariant.
    static Graph from_data(GraphData data)
    {
        ValidationReport r = validate_graph(data);
        if (!r.ok())
            throw Error(ErrorKind::InvalidGraph,
                        to_string(r.violations.front().violation) + " (" + r.violations.front().detail + ")");
        return Graph(std::move(data));
    }

    const GraphData& data() const { return data_; }

    std::size_t vertex_count() const { return data_.genus.size(); }
    std::size_t half_edge_count() const { return data_.end.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    int vertex_genus(VertexId v) const
    {
        check_vertex(v);
        return data_.genus[v];
    }
    VertexId end(HalfEdgeId h) const { return data_.end[h]; }
    HalfEdgeId partner(HalfEdgeId h) const { return data_.involution[h]; }
    bool is_leg(HalfEdgeId h) const { return data_.involution[h] == h; }
    const Integer& leg_weight(HalfEdgeId h) const { return data_.leg_weights.at(h); }
    const Integer& twist() const { return data_.twist; }

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeId e) const
    {
        check_edge(e);
        return edges_[e];
    }
    /// -1 for legs.
    EdgeId edge_of(HalfEdgeId h) const { return edge_of_[h]; }
    bool is_loop(EdgeId e) const { return end(edges_[e].source) == end(edges_[e].target); }

    const std::vector<HalfEdgeId>& legs() const { return legs_; }
    /// All half-edges (legs included) attached to v, increasing id.
    const std::vector<HalfEdgeId>& halves_at(VertexId v) const
    {
        check_vertex(v);
        return halves_at_[v];
    }
    int valence(VertexId v) const
    {
        check_vertex(v);
        return static_cast<int>(std::count_if(halves_at_[v].begin(), halves_at_[v].end(),
                                              [this](HalfEdgeId h) { return !is_leg(h); }));
    }

    void check_vertex(VertexId v) const
    {
        if (v < 0 || v >= static_cast<int>(vertex_count()))
            throw Error(ErrorKind::UnknownVertex, std::to_string(v));
    }
    void check_edge(EdgeId e) const
    {
        if (e < 0 || e >= static_cast<int>(edge_count()))
            throw Error(ErrorKind::UnknownEdge, std::to_string(e));
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.data_ == b.data_; }

private:
    explicit Graph(GraphData data)
        : data_(std::move(data))
    {
        const int nh = static_cast<int>(data_.end.size());
        edge_of_.assign(nh, -1);
        halves_at_.assign(data_.genus.size(), {});
        for (int h = 0; h < nh; ++h) {
            halves_at_[data_.end[h]].push_back(h);
            int p = data_.involution[h];
            if (p == h) {
                legs_.push_back(h);
            } else if (h < p) {
                EdgeId id = static_cast<EdgeId>(edges_.size());
                edges_.push_back({id, h, p});
                edge_of_[h] = edge_of_[p] = id;
            }
        }
    }

    GraphData data_;
    std::vector<Edge> edges_;
    std::vector<EdgeId> edge_of_;
    std::vector<HalfEdgeId> legs_;
    std::vector<std::vector<HalfEdgeId>> halves_at_;
};

/// Convenience construction: edges get consecutive half-edge pairs
/// (source half at `from`), legs a single half-edge each.
class GraphBuilder {
public:
    VertexId add_vertex(int genus = 0)
    {
        data_.genus.push_back(genus);
        return static_cast<VertexId>(data_.genus.size() - 1);
    }
    /// Returns the id the edge will have in the built graph.
    EdgeId add_edge(VertexId from, VertexId to)
    {
        HalfEdgeId h = static_cast<HalfEdgeId>(data_.end.size());
        data_.end.push_back(from);
        data_.end.push_back(to);
        data_.involution.push_back(h + 1);
        data_.involution.push_back(h);
        return edges_++;
    }
    HalfEdgeId add_leg(VertexId v, Integer weight)
    {
        HalfEdgeId h = static_cast<HalfEdgeId>(data_.end.size());
        data_.end.push_back(v);
        data_.involution.push_back(h);
        data_.leg_weights[h] = std::move(weight);
        return h;
    }
    GraphBuilder& twist(Integer k)
    {
        data_.twist = std::move(k);
        return *this;
    }
    const GraphData& data() const { return data_; }
    Graph build() const { return Graph::from_data(data_); }

private:
    GraphData data_;
    EdgeId edges_ = 0;
};

/// First Betti number plus the sum of vertex genera.
inline int graph_genus(const Graph& g)
{
    int s = static_cast<int>(g.edge_count()) - static_cast<int>(g.vertex_count()) + 1;
    for (int x : g.data().genus)
        s += x;
    return s;
}

inline int first_betti_number(const Graph& g)
{
    return static_cast<int>(g.edge_count()) - static_cast<int>(g.vertex_count()) + 1;
}

/// kappa(v) = 2 g(v) - 2 + val(v)
inline int canonical_degree(const Graph& g, VertexId v)
{
    g.check_vertex(v);
    return 2 * g.vertex_genus(v) - 2 + g.valence(v);
}

/// Vertices whose curve component would be unstable: genus 0 with fewer than
/// three special points, or genus 1 with none. Advisory only; nothing else in
/// the library requires stability.
inline std::vector<VertexId> unstable_vertices(const Graph& g)
{
    std::vector<VertexId> out;
    for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
        int special = static_cast<int>(g.halves_at(v).size());
        int gv = g.vertex_genus(v);
        if ((gv == 0 && special < 3) || (gv == 1 && special < 1))
            out.push_back(v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cycles

/// A directed simple cycle, stored as its directed edges (each given by its
/// source half-edge), plus the signed incidence vector over edge ids: +1 when
/// traversed along the canonical orientation, -1 against it.
struct Cycle {
    std::vector<HalfEdgeId> edges;
    std::vector<int> incidence;

    std::vector<EdgeId> edge_set(const Graph& g) const
    {
        std::vector<EdgeId> s;
        for (HalfEdgeId h : edges)
            s.push_back(g.edge_of(h));
        std::sort(s.begin(), s.end());
        return s;
    }

    bool operator==(const Cycle&) const = default;
};

/// Builds a Cycle from directed edges, checking that it closes up and repeats
/// neither vertices nor edges.
inline Cycle make_cycle(const Graph& g, std::vector<HalfEdgeId> directed)
{
    Cycle c;
    c.incidence.assign(g.edge_count(), 0);
    std::set<VertexId> seen_vertices;
    for (std::size_t i = 0; i < directed.size(); ++i) {
        HalfEdgeId h = directed[i];
        if (h < 0 || h >= static_cast<int>(g.half_edge_count()) || g.is_leg(h))
            throw Error(ErrorKind::UnknownEdge, "half-edge " + std::to_string(h) + " is not a directed edge");
        HalfEdgeId next = directed[(i + 1) % directed.size()];
        if (g.end(g.partner(h)) != g.end(next))
            throw Error(ErrorKind::UnknownEdge, "directed edges do not close up into a cycle");
        if (!seen_vertices.insert(g.end(h)).second)
            throw Error(ErrorKind::UnknownEdge, "cycle repeats a vertex");
        EdgeId e = g.edge_of(h);
        if (c.incidence[e] != 0)
            throw Error(ErrorKind::UnknownEdge, "cycle repeats an edge");
        c.incidence[e] = (h == g.edge(e).source) ? 1 : -1;
    }
    c.edges = std::move(directed);
    return c;
}

/// Deterministic DFS spanning tree rooted at vertex 0; half-edges at each
/// vertex are explored in increasing id.
struct SpanningTree {
    std::vector<HalfEdgeId> parent_half; // half-edge at v whose partner sits at v's parent; -1 at the root
    std::vector<int> depth;
    std::vector<VertexId> preorder;
    std::vector<bool> in_tree; // per edge
};

inline SpanningTree spanning_tree(const Graph& g)
{
    const std::size_t nv = g.vertex_count();
    SpanningTree t;
    t.parent_half.assign(nv, -1);
    t.depth.assign(nv, 0);
    t.in_tree.assign(g.edge_count(), false);
    std::vector<bool> visited(nv, false);
    if (nv == 0)
        return t;

    struct Frame {
        VertexId v;
        std::size_t next;
    };
    std::vector<Frame> stack{{0, 0}};
    visited[0] = true;
    t.preorder.push_back(0);
    while (!stack.empty()) {
        Frame& f = stack.back();
        const auto& halves = g.halves_at(f.v);
        if (f.next == halves.size()) {
            stack.pop_back();
            continue;
        }
        HalfEdgeId h = halves[f.next++];
        if (g.is_leg(h))
            continue;
        VertexId u = g.end(g.partner(h));
        if (visited[u])
            continue;
        visited[u] = true;
        t.parent_half[u] = g.partner(h);
        t.depth[u] = t.depth[f.v] + 1;
        t.in_tree[g.edge_of(h)] = true;
        t.preorder.push_back(u);
        stack.push_back({u, 0});
    }
    return t;
}

/// Directed edges of the tree path from s to t.
inline std::vector<HalfEdgeId> tree_path(const Graph& g, const SpanningTree& tree, VertexId s, VertexId t)
{
    std::vector<HalfEdgeId> up, down;
    while (s != t) {
        if (tree.depth[s] >= tree.depth[t]) {
            HalfEdgeId h = tree.parent_half[s];
            up.push_back(h);
            s = g.end(g.partner(h));
        } else {
            HalfEdgeId h = tree.parent_half[t];
            down.push_back(g.partner(h));
            t = g.end(g.partner(h));
        }
    }
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
}

/// Fundamental cycles of the DFS spanning tree, one per non-tree edge in
/// increasing edge id. For a non-tree edge e: s -> t, the cycle runs along the
/// tree from s to t and returns along e backwards.
inline std::vector<Cycle> cycle_basis(const Graph& g)
{
    SpanningTree tree = spanning_tree(g);
    std::vector<Cycle> basis;
    for (const Edge& e : g.edges()) {
        if (tree.in_tree[e.id])
            continue;
        VertexId s = g.end(e.source), t = g.end(e.target);
        std::vector<HalfEdgeId> directed = tree_path(g, tree, s, t);
        directed.push_back(e.target);
        basis.push_back(make_cycle(g, std::move(directed)));
    }
    return basis;
}

namespace detail {

inline std::vector<HalfEdgeId> reversed_cycle(const Graph& g, const std::vector<HalfEdgeId>& c)
{
    std::vector<HalfEdgeId> r;
    r.reserve(c.size());
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        r.push_back(g.partner(*it));
    return r;
}

/// Lexicographically smallest rotation of either traversal direction.
inline std::vector<HalfEdgeId> canonical_cycle_sequence(const Graph& g, const std::vector<HalfEdgeId>& c)
{
    std::vector<HalfEdgeId> best;
    for (const auto& seq : {c, reversed_cycle(g, c)}) {
        for (std::size_t r = 0; r < seq.size(); ++r) {
            std::vector<HalfEdgeId> rot(seq.begin() + r, seq.end());
            rot.insert(rot.end(), seq.begin(), seq.begin() + r);
            if (best.empty() || rot < best)
                best = std::move(rot);
        }
    }
    return best;
}

} // namespace detail

/// Every undirected simple cycle exactly once (self-loops and pairs of
/// parallel edges included), in its lexicographically smallest directed
/// representation, sorted by that representation.
inline std::vector<Cycle> enumerate_cycles(const Graph& g)
{
    std::set<std::vector<HalfEdgeId>> found;
    const int nv = static_cast<int>(g.vertex_count());
    std::vector<bool> on_path(nv, false);
    std::vector<bool> edge_used(g.edge_count(), false);
    std::vector<HalfEdgeId> path;

    // simple paths from `start` through vertices > start, closed when an
    // unused edge returns to `start`
    auto search = [&](auto&& self, VertexId start, VertexId v) -> void {
        for (HalfEdgeId h : g.halves_at(v)) {
            if (g.is_leg(h))
                continue;
            EdgeId e = g.edge_of(h);
            if (edge_used[e])
                continue;
            VertexId u = g.end(g.partner(h));
            if (u == start) {
                path.push_back(h);
                found.insert(detail::canonical_cycle_sequence(g, path));
                path.pop_back();
            } else if (u > start && !on_path[u]) {
                edge_used[e] = true;
                on_path[u] = true;
                path.push_back(h);
                self(self, start, u);
                path.pop_back();
                on_path[u] = false;
                edge_used[e] = false;
            }
        }
    };
    for (VertexId s = 0; s < nv; ++s) {
        on_path[s] = true;
        search(search, s, s);
        on_path[s] = false;
    }

    std::vector<Cycle> out;
    out.reserve(found.size());
    for (const auto& seq : found)
        out.push_back(make_cycle(g, seq));
    return out;
}

// ---------------------------------------------------------------------------
// Contraction

struct ContractionResult {
    Graph contracted;
    std::vector<VertexId> vertex_map;  // old vertex -> new vertex
    std::vector<HalfEdgeId> half_map;  // old half-edge -> new half-edge, -1 if contracted
    std::vector<EdgeId> edge_map;      // old edge -> new edge, -1 if contracted
    std::vector<EdgeId> contracted_set; // sorted old edge ids
};

/// Contracts the edges in `edges`. Surviving vertices and half-edges are
/// renumbered order-preservingly (a merged vertex takes the position of its
/// smallest member), so contracting S then S' equals contracting S ∪ S'.
/// Merging adds genera; every contracted edge that closes a cycle adds one.
inline ContractionResult contract(const Graph& g, const std::vector<EdgeId>& edges)
{
    std::vector<bool> contracted(g.edge_count(), false);
    for (EdgeId e : edges) {
        g.check_edge(e);
        contracted[e] = true;
    }

    const int nv = static_cast<int>(g.vertex_count());
    detail::UnionFind uf(nv);
    for (const Edge& e : g.edges())
        if (contracted[e.id])
            uf.unite(g.end(e.source), g.end(e.target));

    struct {
        std::vector<VertexId> vertex_map;
        std::vector<HalfEdgeId> half_map;
    } res;
    std::vector<int> class_index(nv, -1);
    GraphData d;
    for (VertexId v = 0; v < nv; ++v) {
        if (uf.find(v) == v) {
            class_index[v] = static_cast<int>(d.genus.size());
            d.genus.push_back(0);
        }
    }
    res.vertex_map.resize(nv);
    std::vector<int> class_size(d.genus.size(), 0);
    for (VertexId v = 0; v < nv; ++v) {
        int c = class_index[uf.find(v)];
        res.vertex_map[v] = c;
        d.genus[c] += g.vertex_genus(v);
        ++class_size[c];
    }
    std::vector<int> contracted_in_class(d.genus.size(), 0);
    for (const Edge& e : g.edges())
        if (contracted[e.id])
            ++contracted_in_class[res.vertex_map[g.end(e.source)]];
    for (std::size_t c = 0; c < d.genus.size(); ++c)
        d.genus[c] += contracted_in_class[c] - class_size[c] + 1;

    const int nh = static_cast<int>(g.half_edge_count());
    res.half_map.assign(nh, -1);
    int next = 0;
    for (HalfEdgeId h = 0; h < nh; ++h)
        if (g.is_leg(h) || !contracted[g.edge_of(h)])
            res.half_map[h] = next++;
    d.end.resize(next);
    d.involution.resize(next);
    for (HalfEdgeId h = 0; h < nh; ++h) {
        int nh2 = res.half_map[h];
        if (nh2 < 0)
            continue;
        d.end[nh2] = res.vertex_map[g.end(h)];
        d.involution[nh2] = res.half_map[g.partner(h)];
        if (g.is_leg(h))
            d.leg_weights[nh2] = g.leg_weight(h);
    }
    d.twist = g.twist();

    ContractionResult out{Graph::from_data(std::move(d)), std::move(res.vertex_map), std::move(res.half_map), {}, {}};
    out.edge_map.assign(g.edge_count(), -1);
    for (const Edge& e : g.edges()) {
        if (contracted[e.id])
            out.contracted_set.push_back(e.id);
        else
            out.edge_map[e.id] = out.contracted.edge_of(out.half_map[e.source]);
    }
    return out;
}

} // namespace drfan
