// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace drfan;
using namespace drfan::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream note;

    void fail(const std::string& why)
    {
        if (pass)
            note << why;
        pass = false;
    }
};

const std::vector<CorpusGraph>& shared_corpus()
{
    static const std::vector<CorpusGraph> graphs = corpus(200);
    return graphs;
}

std::set<ConeKey> keys_of(const std::vector<CatalogEntry>& cat)
{
    std::set<ConeKey> s;
    for (const auto& e : cat)
        s.insert(e.cone.key());
    return s;
}

void two_gon_rays(Outcome& out)
{
    double slowest = 0;
    for (int n = 1; n <= 20; ++n) {
        auto t0 = Clock::now();
        Fan f = build_fan(two_gon(n));
        slowest = std::max(slowest, seconds_since(t0));
        IntMatrix expected;
        for (int a = 0; a <= n; ++a)
            expected.push_back(primitive(IntVector{n - a, a}));
        std::sort(expected.begin(), expected.end());
        if (f.rays() != expected)
            out.fail("n=" + std::to_string(n) + " has " + std::to_string(f.rays().size()) + " rays");
    }
    if (slowest >= 1.0)
        out.fail("slowest n took " + std::to_string(slowest) + " s");
    out.note << (out.pass ? "n=1..20 give n+1 rays along (n-a, a)" : "") << "; slowest " << slowest << " s";
}

void banana_catalog(Outcome& out)
{
    auto t0 = Clock::now();
    Graph g = banana(3, 10);
    auto cat = cone_catalog(g);
    std::size_t planes = 0, axes = 0, interior = 0, zero = 0;
    for (const auto& e : cat) {
        const auto& r = e.cone.rays();
        if (r.empty())
            ++zero;
        else if (e.cone.dimension() == 2 && r.size() == 2)
            ++planes;
        else if (r.size() == 1 && std::count(r[0].begin(), r[0].end(), 0) == 2)
            ++axes;
        else if (r.size() == 1 && std::count(r[0].begin(), r[0].end(), 0) == 0)
            ++interior;
    }
    if (planes != 3 || axes != 3 || interior != 36 || zero != 1 || cat.size() != 43)
        out.fail("catalog " + std::to_string(planes) + "/" + std::to_string(interior) + "/" + std::to_string(axes) +
                 "/" + std::to_string(zero));
    Fan f = fan_from_catalog(g, cat);
    if (f.maximal_count() != 39)
        out.fail("maximal cones " + std::to_string(f.maximal_count()));
    Integer radius = 2 * enumeration_bound(g, base_weighting(g));
    if (keys_of(cat) != oracle_cone_catalog(g, radius))
        out.fail("differs from the oracle at radius " + radius.str());

    std::vector<Json> labels{"e1", "e2", "e3"};
    std::string svg = render_slice_svg(slice_fan(f), labels);
    auto count = [&](const std::string& needle) {
        std::size_t n = 0;
        for (std::size_t at = svg.find(needle); at != std::string::npos; at = svg.find(needle, at + 1))
            ++n;
        return n;
    };
    if (count("<circle class=\"ray\"") != 36 || count("<line class=\"cell\"") != 3)
        out.fail("svg markers/segments wrong");
    double t = seconds_since(t0);
    if (t >= 30)
        out.fail("took " + std::to_string(t) + " s");
    if (out.pass)
        out.note << "3 planes, 36 interior rays, 3 axes, {0}; 39 maximal; oracle agrees at radius " << radius
                 << "; svg 36 points, 3 segments";
    out.note << "; " << t << " s";
}

void fan_axioms(Outcome& out)
{
    auto t0 = Clock::now();
    std::size_t cones = 0;
    for (const auto& [g, seed] : shared_corpus()) {
        Fan f = build_fan(g);
        cones += f.cones().size();
        FanReport r = verify_fan(f);
        if (!r.ok())
            out.fail("seed " + std::to_string(seed) + ": " + to_string(r.first()->kind));
    }
    double t = seconds_since(t0);
    if (t >= 300)
        out.fail("took " + std::to_string(t) + " s");
    out.note << (out.pass ? "" : "; ") << shared_corpus().size() << " graphs, " << cones << " cones verified; " << t
             << " s";
}

void dual_generators_span(Outcome& out)
{
    std::size_t checked = 0;
    for (const auto& [g, seed] : shared_corpus()) {
        for (const auto& w : sample_weightings(g, 4, 4, seed)) {
            PolyCone spanned = PolyCone::from_generators(g.edge_count(), dual_cone_generators(g, w));
            PolyCone dual = polar_dual(cone_of_weighting(g, w));
            ++checked;
            if (!(spanned.contains(dual) && dual.contains(spanned)))
                out.fail("seed " + std::to_string(seed));
        }
    }
    out.note << (out.pass ? "" : "; ") << checked << " weightings, equal both ways";
}

void contraction_decomposes(Outcome& out)
{
    std::size_t positive = 0, arbitrary = 0;
    std::mt19937 rng(11);
    for (const auto& [g, seed] : shared_corpus()) {
        auto cycles = enumerate_cycles(g);
        for (const auto& w : sample_weightings(g, 6, 6, seed)) {
            // positive cycles of w, in either orientation
            for (const auto& c : cycles) {
                Cycle back = make_cycle(g, detail::reversed_cycle(g, c.edges));
                if (!is_positive_cycle(w, c) && !is_positive_cycle(w, back))
                    continue;
                ContractionResult res = contract(g, c.edge_set(g));
                ++positive;
                if (!(restricted_cone(g, w, res) == cone_of_weighting(g, w)))
                    out.fail("equality fails, seed " + std::to_string(seed));
            }
            // an arbitrary edge subset
            std::vector<EdgeId> s;
            for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e)
                if (rng() % 2)
                    s.push_back(e);
            ++arbitrary;
            if (!check_contraction_compat(g, w, s).inclusion)
                out.fail("inclusion fails, seed " + std::to_string(seed));
        }
    }
    if (positive < 100)
        out.fail("only " + std::to_string(positive) + " positive-cycle triples");
    out.note << (out.pass ? "" : "; ") << positive << " positive-cycle triples equal, " << arbitrary
             << " arbitrary contractions included";
}

void positive_cycle_bound(Outcome& out)
{
    std::size_t samples = 0;
    std::mt19937 rng(13);
    for (const auto& [g, seed] : shared_corpus()) {
        auto basis = cycle_basis(g);
        if (basis.empty())
            continue;
        Weighting base = base_weighting(g);
        long long n = static_cast<long long>(enumeration_bound(g, base));
        if (n == 0)
            continue; // (N, 2N] is empty
        for (int rep = 0; rep < 12; ++rep) {
            // one entry with |v_i| in (N, 2N], the others anywhere in [-2N, 2N]
            IntVector v;
            for (std::size_t i = 0; i < basis.size(); ++i)
                v.push_back(std::uniform_int_distribution<long long>(-2 * n, 2 * n)(rng));
            std::size_t big = rng() % basis.size();
            long long mag = std::uniform_int_distribution<long long>(n + 1, 2 * n)(rng);
            v[big] = rng() % 2 ? mag : -mag;
            ++samples;
            if (!find_positive_cycle(g, shift_by_cycles(g, base, basis, v)))
                out.fail("no positive cycle, seed " + std::to_string(seed));
        }
    }
    if (samples < 500)
        out.fail("only " + std::to_string(samples) + " samples");
    out.note << (out.pass ? "" : "; ") << samples << " coefficient vectors beyond N all admit a positive cycle";
}

void degree_zero(Outcome& out)
{
    std::size_t weightings = 0, perturbations = 0, loop_halves = 0;
    for (const auto& [g, seed] : shared_corpus()) {
        for (const auto& w : sample_weightings(g, 5, 5, seed)) {
            WeightingCheck c = is_weighting(g, w);
            ++weightings;
            if (!c.ok || !is_zero(c.defects))
                out.fail("non-zero defect, seed " + std::to_string(seed));
            for (const Edge& e : g.edges()) {
                // w(h) + 1 at the half, w(h') - 1 at its partner: condition (1) still holds
                IntVector v = w.values();
                v[e.source] += 1;
                v[e.target] -= 1;
                WeightingCheck p = is_weighting(g, v);
                std::size_t nonzero = static_cast<std::size_t>(
                    std::count_if(p.defects.begin(), p.defects.end(), [](const Integer& d) { return !d.is_zero(); }));
                if (g.is_loop(e.id)) {
                    ++loop_halves;
                    if (nonzero != 0)
                        out.fail("loop perturbation changed a defect, seed " + std::to_string(seed));
                    continue;
                }
                ++perturbations;
                if (nonzero != 2 || !p.opposite_halves)
                    out.fail("edge perturbation gives " + std::to_string(nonzero) + " defects, seed " +
                             std::to_string(seed));

                // the literal single-half change breaks condition (1) and one defect
                IntVector single = w.values();
                single[e.source] += 1;
                WeightingCheck q = is_weighting(g, single);
                std::size_t one = static_cast<std::size_t>(
                    std::count_if(q.defects.begin(), q.defects.end(), [](const Integer& d) { return !d.is_zero(); }));
                if (one != 1 || q.opposite_halves)
                    out.fail("single-half perturbation, seed " + std::to_string(seed));
            }
        }
    }
    out.note << (out.pass ? "" : "; ") << weightings << " weightings balanced; " << perturbations
             << " edge perturbations give two defects; " << loop_halves << " loop perturbations give none";
}

void oracle_primitives(Outcome& out)
{
    std::size_t rays = 0, monoids = 0;
    for (const auto& [g, seed] : shared_corpus()) {
        if (g.edge_count() > 5)
            continue;
        for (const auto& w : sample_weightings(g, 3, 4, seed)) {
            Cone c = cone_of_weighting(g, w);
            ++rays;
            if (extreme_rays(c) != oracle_extreme_rays(c))
                out.fail("rays differ, seed " + std::to_string(seed));
            ++monoids;
            if (!oracle_monoid_check(c, monoid_generators(c), 5))
                out.fail("primal monoid, seed " + std::to_string(seed));
            PolyCone dual = polar_dual(c);
            ++monoids;
            if (!oracle_monoid_check(dual.constraints(), monoid_generators(dual), 5))
                out.fail("dual monoid, seed " + std::to_string(seed));
        }
    }
    out.note << (out.pass ? "" : "; ") << rays << " cones match the brute-force rays; " << monoids
             << " monoid generator sets cover the box of radius 5";
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        std::function<void(Outcome&)> run;
    };
    const Criterion criteria[] = {
        {1, "2-gon ray count", two_gon_rays},
        {2, "banana catalog", banana_catalog},
        {3, "fan axioms on random graphs", fan_axioms},
        {4, "dual cone generators span the polar dual", dual_generators_span},
        {5, "cycle contraction decomposes cones", contraction_decomposes},
        {6, "positive cycle beyond the bound", positive_cycle_bound},
        {7, "degree-zero bookkeeping", degree_zero},
        {8, "oracle agreement for rays and monoids", oracle_primitives},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome out;
        try {
            c.run(out);
        } catch (const std::exception& e) {
            out.fail(std::string("exception: ") + e.what());
        }
        failures += out.pass ? 0 : 1;
        std::printf("%s criterion %d (%s): %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, out.note.str().c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
