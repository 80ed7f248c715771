#pragma once

#include "drfan/drfan.hpp"

#include <random>
#include <vector>

namespace drfan::testing {

/// Two vertices joined by `edges` parallel edges, legs +n at the first and
/// -n at the second, twist 0.
inline Graph banana(int edges, int n)
{
    GraphBuilder b;
    VertexId u = b.add_vertex(0), v = b.add_vertex(0);
    for (int i = 0; i < edges; ++i)
        b.add_edge(u, v);
    b.add_leg(u, n);
    b.add_leg(v, -n);
    return b.build();
}

inline Graph two_gon(int n)
{
    return banana(2, n);
}

/// One vertex of the given genus carrying a single loop.
inline Graph self_loop(int genus = 0)
{
    GraphBuilder b;
    VertexId v = b.add_vertex(genus);
    b.add_edge(v, v);
    return b.build();
}

/// A path with `edges` edges, genus-1 ends so the curve is stable, twist 0.
inline Graph path_tree(int edges)
{
    GraphBuilder b;
    VertexId prev = b.add_vertex(1);
    for (int i = 0; i < edges; ++i) {
        VertexId next = b.add_vertex(i + 1 == edges ? 1 : 0);
        b.add_edge(prev, next);
        prev = next;
    }
    return b.build();
}

inline Weighting with_flows(const Graph& g, IntVector f)
{
    return weighting_from_flows(g, f);
}

struct CorpusGraph {
    Graph graph;
    unsigned seed;
};

/// Random connected graphs with at most 4 vertices, 1 to 5 edges, first Betti
/// number at most 2, vertex genera in {0, 1}, twist in {0, 1}, and at most
/// three legs with weights in [-4, 4] satisfying the leg-sum condition.
inline std::vector<CorpusGraph> corpus(std::size_t count, unsigned seed = 20241017)
{
    std::vector<CorpusGraph> out;
    std::mt19937 seeds(seed);
    while (out.size() < count) {
        const unsigned graph_seed = static_cast<unsigned>(seeds());
        std::mt19937 rng(graph_seed);
        auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

        const int nv = uniform(1, 4);
        const int extra = uniform(nv == 1 ? 1 : 0, 2);
        if (nv - 1 + extra > 5 || nv - 1 + extra == 0)
            continue;
        GraphBuilder b;
        int genus_sum = 0;
        for (int v = 0; v < nv; ++v) {
            int g = uniform(0, 3) == 0 ? 1 : 0;
            genus_sum += g;
            b.add_vertex(g);
        }
        for (int v = 1; v < nv; ++v) {
            int parent = uniform(0, v - 1);
            if (uniform(0, 1))
                b.add_edge(parent, v);
            else
                b.add_edge(v, parent);
        }
        for (int i = 0; i < extra; ++i)
            b.add_edge(uniform(0, nv - 1), uniform(0, nv - 1));

        const int k = uniform(0, 1);
        const int genus = extra + genus_sum;
        const int target = -k * (2 * genus - 2);
        const int legs = target == 0 ? uniform(0, 3) : uniform(1, 3);
        std::vector<int> w(legs);
        int s = 0;
        for (int i = 0; i + 1 < legs; ++i) {
            w[i] = uniform(-4, 4);
            s += w[i];
        }
        if (legs > 0) {
            w[legs - 1] = target - s;
            if (std::abs(w[legs - 1]) > 4)
                continue;
        }
        for (int i = 0; i < legs; ++i)
            b.add_leg(uniform(0, nv - 1), w[i]);
        b.twist(k);
        out.push_back({b.build(), graph_seed});
    }
    return out;
}

/// Weightings of g: the base weighting shifted by coefficient vectors drawn
/// from [-radius, radius]^h.
inline std::vector<Weighting> sample_weightings(const Graph& g, std::size_t count, int radius, unsigned seed)
{
    std::mt19937 rng(seed);
    const auto basis = cycle_basis(g);
    const Weighting base = base_weighting(g);
    std::vector<Weighting> out{base};
    while (out.size() < count) {
        IntVector c;
        for (std::size_t i = 0; i < basis.size(); ++i)
            c.push_back(std::uniform_int_distribution<int>(-radius, radius)(rng));
        out.push_back(shift_by_cycles(g, base, basis, c));
        if (basis.empty())
            break;
    }
    return out;
}

} // namespace drfan::testing
