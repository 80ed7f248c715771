#include "support.hpp"

#include <gtest/gtest.h>

using namespace drfan;
using namespace drfan::testing;

namespace {

Graph genus_one_pair()
{
    GraphBuilder b;
    VertexId u = b.add_vertex(1), v = b.add_vertex(1);
    b.add_edge(u, v);
    b.add_leg(u, -2);
    b.twist(1);
    return b.build();
}

} // namespace

TEST(IsWeighting, TwoGonFlows)
{
    Graph g = two_gon(3);
    WeightingCheck ok = is_weighting(g, with_flows(g, {2, 1}));
    EXPECT_TRUE(ok.ok);
    EXPECT_EQ(ok.defects, (IntVector{0, 0}));

    WeightingCheck bad = is_weighting(g, with_flows(g, {2, 2}));
    EXPECT_FALSE(bad.ok);
    EXPECT_NE(bad.defects[0], 0);
    EXPECT_NE(bad.defects[1], 0);
}

TEST(IsWeighting, TwistedGenusOnePair)
{
    Graph g = genus_one_pair();
    // the u-half (half-edge 0) carries 1
    IntVector values{1, -1, -2};
    EXPECT_TRUE(is_weighting(g, values).ok);
}

TEST(IsWeighting, MissingHalfEdge)
{
    Graph g = two_gon(3);
    try {
        is_weighting(g, IntVector{0, 0});
        FAIL() << "expected MissingHalfEdge";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MissingHalfEdge);
    }
}

TEST(IsWeighting, ConditionOneAndLegs)
{
    Graph g = two_gon(3);
    IntVector v = with_flows(g, {2, 1}).values();
    v[0] += 1; // breaks w(h) + w(h') = 0 on the first edge
    WeightingCheck c = is_weighting(g, v);
    EXPECT_FALSE(c.opposite_halves);
    EXPECT_TRUE(c.legs_match);

    IntVector l = with_flows(g, {2, 1}).values();
    l[4] = 0;
    EXPECT_FALSE(is_weighting(g, l).legs_match);
}

TEST(BaseWeighting, Examples)
{
    Graph g = genus_one_pair();
    Weighting w = base_weighting(g);
    EXPECT_EQ(w.values(), (IntVector{1, -1, -2}));

    Graph two = two_gon(3);
    EXPECT_EQ(flows(two, base_weighting(two)), (IntVector{3, 0}));
    EXPECT_TRUE(is_weighting(two, base_weighting(two)).ok);

    Graph loop = self_loop();
    EXPECT_EQ(base_weighting(loop).values(), (IntVector{0, 0}));
}

TEST(ShiftByCycles, Examples)
{
    Graph g = two_gon(3);
    Weighting w = base_weighting(g);
    EXPECT_EQ(shift_by_cycles(g, w, IntVector{0}), w);

    Weighting shifted = shift_by_cycles(g, w, IntVector{1});
    EXPECT_EQ(flows(g, shifted), (IntVector{2, 1}));
    EXPECT_TRUE(is_weighting(g, shifted).ok);

    Graph loop = self_loop();
    Weighting l = shift_by_cycles(loop, base_weighting(loop), IntVector{5});
    EXPECT_EQ(flows(loop, l), (IntVector{5}));
}

TEST(RestrictWeighting, Examples)
{
    Graph g = two_gon(3);
    ContractionResult c = contract(g, {0});
    Weighting r = restrict_weighting(g, with_flows(g, {2, 1}), c);
    EXPECT_EQ(flows(c.contracted, r), (IntVector{1}));
    EXPECT_TRUE(is_weighting(c.contracted, r).ok);

    Graph b = banana(3, 10);
    ContractionResult cb = contract(b, {0});
    Weighting rb = restrict_weighting(b, with_flows(b, {3, 3, 4}), cb);
    EXPECT_EQ(flows(cb.contracted, rb), (IntVector{3, 4}));
    EXPECT_TRUE(is_weighting(cb.contracted, rb).ok);

    Graph t = path_tree(3);
    ContractionResult ct = contract(t, {1});
    Weighting rt = restrict_weighting(t, base_weighting(t), ct);
    EXPECT_EQ(ct.contracted.edge_count(), 2u);
    EXPECT_TRUE(is_weighting(ct.contracted, rt).ok);
}

TEST(FindPositiveCycle, Examples)
{
    Graph g = two_gon(3);
    EXPECT_FALSE(find_positive_cycle(g, with_flows(g, {2, 1})));

    auto c = find_positive_cycle(g, with_flows(g, {4, -1}));
    ASSERT_TRUE(c);
    // e2 from u to v, then e1 back from v to u
    EXPECT_EQ(c->edges, (std::vector<HalfEdgeId>{g.edge(1).source, g.edge(0).target}));

    Graph loop = self_loop();
    auto l = find_positive_cycle(loop, with_flows(loop, {5}));
    ASSERT_TRUE(l);
    EXPECT_EQ(l->edges.size(), 1u);
    EXPECT_FALSE(find_positive_cycle(loop, with_flows(loop, {0})));
}

TEST(FindPositiveCycle, AgreesWithExhaustiveSignCheck)
{
    for (const auto& [g, seed] : corpus(60)) {
        auto cycles = enumerate_cycles(g);
        for (const auto& w : sample_weightings(g, 15, 6, seed)) {
            bool any = false;
            for (const auto& c : cycles) {
                Cycle back = make_cycle(g, detail::reversed_cycle(g, c.edges));
                any = any || is_positive_cycle(w, c) || is_positive_cycle(w, back);
            }
            auto found = find_positive_cycle(g, w);
            EXPECT_EQ(found.has_value(), any) << "seed " << seed;
            if (found) {
                EXPECT_TRUE(is_positive_cycle(w, *found)) << "seed " << seed;
            }
        }
    }
}

TEST(EnumerationBound, Examples)
{
    EXPECT_EQ(phi(0), 1);
    EXPECT_EQ(phi(1), 1);
    EXPECT_EQ(phi(2), 2);
    EXPECT_EQ(phi(3), 4);

    Graph four = banana(4, 2); // h = 3, base flows (2, 0, 0, 0)
    EXPECT_EQ(enumeration_bound(four, base_weighting(four)), 8);

    Graph g = two_gon(3);
    EXPECT_EQ(enumeration_bound(g, with_flows(g, {3, 0})), 3);

    Graph t = genus_one_pair();
    EXPECT_EQ(enumeration_bound(t, base_weighting(t)), 1);
}

TEST(EnumerationBound, LegValuesDoNotCount)
{
    Graph g = two_gon(3);
    // legs carry +-3 but the edges only 2 and 1
    EXPECT_EQ(enumeration_bound(g, with_flows(g, {2, 1})), 2);
}

TEST(Weightings, TorsorUnderCycleSpace)
{
    for (const auto& [g, seed] : corpus(60)) {
        auto basis = cycle_basis(g);
        IntMatrix columns;
        for (const auto& c : basis)
            columns.emplace_back(c.incidence.begin(), c.incidence.end());
        auto ws = sample_weightings(g, 6, 5, seed);
        for (const auto& w : ws) {
            ASSERT_TRUE(is_weighting(g, w).ok) << "seed " << seed;
            IntVector diff = subtract(flows(g, w), flows(g, ws.front()));
            bool ok = false;
            auto x = solve_in_columns(columns, diff, g.edge_count(), ok);
            ASSERT_TRUE(ok) << "seed " << seed;
            for (const auto& q : x)
                EXPECT_EQ(denominator(q), 1) << "seed " << seed;
        }
    }
}

TEST(Weightings, DefectsSumToZero)
{
    std::mt19937 rng(3);
    for (const auto& [g, seed] : corpus(60)) {
        // arbitrary flows satisfy condition (1) and the leg sum, not (2)
        IntVector f;
        for (std::size_t e = 0; e < g.edge_count(); ++e)
            f.push_back(static_cast<int>(rng() % 11) - 5);
        WeightingCheck c = is_weighting(g, weighting_from_flows(g, f));
        Integer s = 0;
        for (const auto& d : c.defects)
            s += d;
        EXPECT_EQ(s, 0) << "seed " << seed;
        EXPECT_EQ(c.ok, is_zero(c.defects)) << "seed " << seed;
    }
}

TEST(Weightings, RestrictionCommutesWithShift)
{
    for (const auto& [g, seed] : corpus(60)) {
        std::vector<EdgeId> s;
        for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); e += 2)
            s.push_back(e);
        ContractionResult c = contract(g, s);
        const auto basis = cycle_basis(g);
        const Weighting w = base_weighting(g);
        IntVector coeffs;
        for (std::size_t b = 0; b < basis.size(); ++b)
            coeffs.push_back(static_cast<int>(b) * 2 - 1);
        Weighting lhs = restrict_weighting(g, shift_by_cycles(g, w, basis, coeffs), c);

        // push each basis cycle forward: its surviving directed edges, with
        // the induced coefficient applied half by half
        IntVector v = restrict_weighting(g, w, c).values();
        for (std::size_t b = 0; b < basis.size(); ++b)
            for (HalfEdgeId h : basis[b].edges)
                if (c.half_map[h] >= 0) {
                    v[c.half_map[h]] += coeffs[b];
                    v[c.half_map[g.partner(h)]] -= coeffs[b];
                }
        EXPECT_EQ(lhs.values(), v) << "seed " << seed;
        EXPECT_TRUE(is_weighting(c.contracted, lhs).ok) << "seed " << seed;
    }
}

TEST(LiftThroughCycle, RestrictsBackAndMakesCyclePositive)
{
    for (const auto& [g, seed] : corpus(60)) {
        for (const auto& gamma : enumerate_cycles(g)) {
            ContractionResult c = contract(g, gamma.edge_set(g));
            for (const auto& child : sample_weightings(c.contracted, 4, 3, seed)) {
                Weighting up = lift_through_cycle(g, c, child, gamma);
                ASSERT_TRUE(is_weighting(g, up).ok) << "seed " << seed;
                EXPECT_TRUE(is_positive_cycle(up, gamma)) << "seed " << seed;
                EXPECT_EQ(restrict_weighting(g, up, c), child) << "seed " << seed;
            }
        }
    }
}
