#pragma once

// The finite set of cones {c_w}, the fan of all their faces, and checks on it.

#include "drfan/cone.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <thread>
#include <vector>

namespace drfan {

struct CatalogEntry {
    Cone cone;
    Weighting witness; // c_witness == cone
};

struct CatalogOptions {
    /// Skip box weightings with a positive cycle (their cones come back from
    /// the contraction recursion) and box weightings whose equality system was
    /// already seen. Turning it off must not change the set of cones.
    bool prune = true;
    unsigned threads = 1;
    /// Refuse boxes with more candidate points than this.
    std::size_t max_box_points = 5'000'000;
};

namespace detail {

/// Coefficient vectors of [-n, n]^h ordered by sup-norm, then lexicographically.
inline std::vector<std::vector<long long>> graded_box(long long n, std::size_t h)
{
    std::vector<std::vector<long long>> out;
    std::vector<long long> cur(h);
    // fill position i onwards with entries in [-r, r]; `hit` records whether
    // some earlier entry already has absolute value r
    std::function<void(std::size_t, long long, bool)> fill = [&](std::size_t i, long long r, bool hit) {
        if (i == h) {
            if (hit)
                out.push_back(cur);
            return;
        }
        for (long long x = -r; x <= r; ++x) {
            cur[i] = x;
            fill(i + 1, r, hit || x == r || x == -r);
        }
    };
    if (h == 0) {
        out.emplace_back();
        return out;
    }
    out.push_back(cur); // r = 0
    for (long long r = 1; r <= n; ++r)
        fill(0, r, false);
    return out;
}

inline IntVector to_integers(const std::vector<long long>& v)
{
    return IntVector(v.begin(), v.end());
}

/// Runs body(i) for i in [0, n) on `threads` workers over contiguous chunks;
/// body must only touch slot i of its output.
inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body)
{
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::size_t workers = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        pool.emplace_back([&body, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i)
                body(i);
        });
    }
    for (auto& t : pool)
        t.join();
}

class Cataloger {
public:
    Cataloger(const Graph& root, const CatalogOptions& opt)
        : root_(root)
        , opt_(opt)
    {
    }

    /// Catalog of contract(root, s), in that graph's own coordinates.
    const std::vector<CatalogEntry>& level(const std::vector<EdgeId>& s)
    {
        auto it = memo_.find(s);
        if (it != memo_.end())
            return it->second;
        ContractionResult here = contract(root_, s);
        std::vector<CatalogEntry> entries = compute(here, s);
        return memo_.emplace(s, std::move(entries)).first->second;
    }

private:
    std::vector<CatalogEntry> compute(const ContractionResult& here, const std::vector<EdgeId>& s)
    {
        const Graph& g = here.contracted;
        std::vector<EdgeId> to_root; // local edge -> root edge
        for (std::size_t e = 0; e < here.edge_map.size(); ++e)
            if (here.edge_map[e] >= 0)
                to_root.push_back(static_cast<EdgeId>(e));

        std::vector<CatalogEntry> out;
        std::set<ConeKey> seen;
        auto add = [&](Cone c, Weighting w) {
            if (seen.insert(c.key()).second)
                out.push_back({std::move(c), std::move(w)});
        };

        for (auto& [c, w] : box_cones(g))
            add(std::move(c), std::move(w));

        for (const Cycle& gamma : enumerate_cycles(g)) {
            std::vector<EdgeId> local = gamma.edge_set(g);
            std::vector<EdgeId> next = s;
            for (EdgeId e : local)
                next.push_back(to_root[e]);
            std::sort(next.begin(), next.end());
            ContractionResult step = contract(g, local);
            std::vector<std::size_t> coords; // child edge -> local edge
            for (std::size_t e = 0; e < step.edge_map.size(); ++e)
                if (step.edge_map[e] >= 0)
                    coords.push_back(e);
            for (const CatalogEntry& child : level(next))
                add(child.cone.embed(g.edge_count(), coords), lift_through_cycle(g, step, child.witness, gamma));
        }
        return out;
    }

    std::vector<std::pair<Cone, Weighting>> box_cones(const Graph& g)
    {
        const Weighting base = base_weighting(g);
        const std::vector<Cycle> basis = cycle_basis(g);
        const Integer bound = enumeration_bound(g, base);
        const std::size_t h = basis.size();

        double points = 1;
        for (std::size_t i = 0; i < h; ++i)
            points *= 2 * static_cast<double>(bound) + 1;
        if (points > static_cast<double>(opt_.max_box_points))
            throw Error(ErrorKind::BoundTooLarge, "N = " + bound.str() + " with h1 = " + std::to_string(h));

        const auto box = graded_box(static_cast<long long>(bound), h);

        // Per candidate: the canonical equality system, or nothing if pruned.
        std::vector<std::optional<IntMatrix>> systems(box.size());
        std::vector<std::optional<Weighting>> weightings(box.size());
        parallel_for(box.size(), opt_.threads, [&](std::size_t i) {
            Weighting w = shift_by_cycles(g, base, basis, to_integers(box[i]));
            if (opt_.prune && find_positive_cycle(g, w))
                return;
            systems[i] = canonical_row_basis(compatibility_equations(g, w, basis), g.edge_count());
            weightings[i] = std::move(w);
        });

        // First occurrence of each equality system, in box order.
        std::vector<std::size_t> firsts;
        std::set<IntMatrix> systems_seen;
        for (std::size_t i = 0; i < box.size(); ++i) {
            if (!systems[i])
                continue;
            if (opt_.prune) {
                if (systems_seen.insert(*systems[i]).second)
                    firsts.push_back(i);
            } else {
                firsts.push_back(i);
            }
        }

        std::vector<std::optional<Cone>> cones(firsts.size());
        parallel_for(firsts.size(), opt_.threads,
                     [&](std::size_t j) { cones[j] = Cone(g.edge_count(), *systems[firsts[j]]); });

        std::vector<std::pair<Cone, Weighting>> out;
        out.reserve(firsts.size());
        for (std::size_t j = 0; j < firsts.size(); ++j)
            out.emplace_back(std::move(*cones[j]), std::move(*weightings[firsts[j]]));
        return out;
    }

    const Graph& root_;
    CatalogOptions opt_;
    std::map<std::vector<EdgeId>, std::vector<CatalogEntry>> memo_;
};

} // namespace detail

/// The distinct cones c_w over all weightings w of g, each with the first
/// weighting found for it. Order: the root box in graded order, then cones
/// reached by contracting the cycles of enumerate_cycles in turn.
inline std::vector<CatalogEntry> cone_catalog(const Graph& g, const CatalogOptions& opt = {})
{
    detail::Cataloger c(g, opt);
    return c.level({});
}

// ---------------------------------------------------------------------------
// Fans

struct FanCone {
    Cone cone;
    std::vector<std::size_t> rays; // indices into Fan::rays, sorted
    bool maximal = false;
    std::optional<IntVector> witness_flows;

    std::size_t dimension() const { return cone.dimension(); }
};

/// A collection of cones in the orthant of Q^ambient_dim, with a shared
/// sorted ray list. Cones are ordered by (dimension, ray indices).
class Fan {
public:
    Fan() = default;

    /// Takes the cones as given (no face closure). Duplicates are merged,
    /// keeping the first witness.
    static Fan assemble(std::size_t ambient_dim, const std::vector<Cone>& cones,
                        const std::vector<std::optional<IntVector>>& witnesses = {})
    {
        Fan f;
        f.dim_ = ambient_dim;
        std::set<IntVector> ray_set;
        for (const auto& c : cones) {
            if (c.ambient_dim() != ambient_dim)
                throw Error(ErrorKind::AmbientMismatch,
                            std::to_string(c.ambient_dim()) + " vs " + std::to_string(ambient_dim));
            ray_set.insert(c.rays().begin(), c.rays().end());
        }
        f.rays_.assign(ray_set.begin(), ray_set.end());

        std::map<std::pair<std::size_t, std::vector<std::size_t>>, FanCone> ordered;
        for (std::size_t i = 0; i < cones.size(); ++i) {
            FanCone fc{cones[i], f.indices_of(cones[i]), false,
                       i < witnesses.size() ? witnesses[i] : std::nullopt};
            ordered.emplace(std::make_pair(cones[i].dimension(), fc.rays), std::move(fc));
        }
        for (auto& [k, fc] : ordered)
            f.cones_.push_back(std::move(fc));

        // maximal: not a proper face of another member
        for (auto& a : f.cones_) {
            a.maximal = std::none_of(f.cones_.begin(), f.cones_.end(), [&](const FanCone& b) {
                return &a != &b && b.rays.size() > a.rays.size() &&
                       std::includes(b.rays.begin(), b.rays.end(), a.rays.begin(), a.rays.end()) &&
                       is_face_of(a.cone, b.cone);
            });
        }
        return f;
    }

    std::size_t ambient_dim() const { return dim_; }
    const IntMatrix& rays() const { return rays_; }
    const std::vector<FanCone>& cones() const { return cones_; }

    std::size_t maximal_count() const
    {
        return static_cast<std::size_t>(
            std::count_if(cones_.begin(), cones_.end(), [](const FanCone& c) { return c.maximal; }));
    }

    /// Index of the cone with this key, if present.
    std::optional<std::size_t> find(const ConeKey& key) const
    {
        for (std::size_t i = 0; i < cones_.size(); ++i)
            if (cones_[i].cone.key() == key)
                return i;
        return std::nullopt;
    }

private:
    std::vector<std::size_t> indices_of(const Cone& c) const
    {
        std::vector<std::size_t> idx;
        for (const auto& r : c.rays())
            idx.push_back(static_cast<std::size_t>(std::lower_bound(rays_.begin(), rays_.end(), r) - rays_.begin()));
        std::sort(idx.begin(), idx.end());
        return idx;
    }

    std::size_t dim_ = 0;
    IntMatrix rays_;
    std::vector<FanCone> cones_;
};

/// All faces of all catalog cones. A face inherits the witness of the first
/// catalog cone it came from; for catalog cones that witness has c_w equal to
/// the cone itself.
inline Fan fan_from_catalog(const Graph& g, const std::vector<CatalogEntry>& catalog)
{
    std::vector<Cone> cones;
    std::vector<std::optional<IntVector>> witnesses;
    std::set<ConeKey> seen;
    auto add = [&](const Cone& c, const Weighting& w) {
        if (seen.insert(c.key()).second) {
            cones.push_back(c);
            witnesses.push_back(flows(g, w));
        }
    };
    for (const auto& e : catalog)
        add(e.cone, e.witness);
    for (const auto& e : catalog)
        for (const auto& f : faces(e.cone))
            add(f, e.witness);
    return Fan::assemble(g.edge_count(), cones, witnesses);
}

inline Fan build_fan(const Graph& g, const CatalogOptions& opt = {})
{
    return fan_from_catalog(g, cone_catalog(g, opt));
}

struct FanViolation {
    enum class Kind { IntersectionNotFace, MissingFace, OutsideOrthant };
    Kind kind;
    std::size_t first;  // cone index
    std::size_t second; // cone index (== first for single-cone violations)
    std::string detail;
};

inline std::string to_string(FanViolation::Kind k)
{
    switch (k) {
    case FanViolation::Kind::IntersectionNotFace: return "IntersectionNotFace";
    case FanViolation::Kind::MissingFace: return "MissingFace";
    case FanViolation::Kind::OutsideOrthant: return "OutsideOrthant";
    }
    return "Unknown";
}

struct FanReport {
    std::vector<FanViolation> violations; // intersection checks first, then faces, then orthant
    bool ok() const { return violations.empty(); }
    const FanViolation* first() const { return violations.empty() ? nullptr : &violations.front(); }
};

/// Checks (i) that the intersection of any two cones is a face of both,
/// (ii) closure under faces, (iii) that every cone lies in the orthant.
inline FanReport verify_fan(const Fan& f, unsigned threads = 1)
{
    FanReport report;
    const auto& cs = f.cones();
    const std::size_t n = cs.size();

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            pairs.emplace_back(i, j);
    std::vector<char> bad(pairs.size(), 0);
    detail::parallel_for(pairs.size(), threads, [&](std::size_t p) {
        const Cone& a = cs[pairs[p].first].cone;
        const Cone& b = cs[pairs[p].second].cone;
        Cone meet = intersect_cones(a, b);
        bad[p] = !(is_face_of(meet, a) && is_face_of(meet, b));
    });
    for (std::size_t p = 0; p < pairs.size(); ++p)
        if (bad[p])
            report.violations.push_back({FanViolation::Kind::IntersectionNotFace, pairs[p].first, pairs[p].second,
                                         "intersection is not a face of both cones"});

    std::set<ConeKey> keys;
    for (const auto& c : cs)
        keys.insert(c.cone.key());
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& face : faces(cs[i].cone))
            if (!keys.count(face.key())) {
                report.violations.push_back({FanViolation::Kind::MissingFace, i, i, "a face is not in the fan"});
                break;
            }

    for (std::size_t i = 0; i < n; ++i) {
        const Cone& c = cs[i].cone;
        bool inside = std::all_of(c.rays().begin(), c.rays().end(), [&](const IntVector& r) {
            return r.size() == f.ambient_dim() && is_nonnegative(r) && c.contains(r);
        });
        if (!inside)
            report.violations.push_back({FanViolation::Kind::OutsideOrthant, i, i, "ray outside the orthant"});
    }
    return report;
}

// ---------------------------------------------------------------------------
// Contraction compatibility

struct CompatEntry {
    IntVector witness_flows;
    bool inclusion = false;      // c_res(w) x {0} inside c_w
    bool positive_cycle = false; // S is the edge set of a positive cycle of w
    bool equality = false;       // checked only when positive_cycle
};

struct CompatReport {
    std::vector<CompatEntry> entries;
    bool ok() const
    {
        return std::all_of(entries.begin(), entries.end(),
                           [](const CompatEntry& e) { return e.inclusion && (!e.positive_cycle || e.equality); });
    }
};

/// The cone of res(w) on g/S, placed back in Q^E with zeros on S.
inline Cone restricted_cone(const Graph& g, const Weighting& w, const ContractionResult& c)
{
    Cone child = cone_of_weighting(c.contracted, restrict_weighting(g, w, c));
    std::vector<std::size_t> coords;
    for (std::size_t e = 0; e < c.edge_map.size(); ++e)
        if (c.edge_map[e] >= 0)
            coords.push_back(e);
    return child.embed(g.edge_count(), coords);
}

/// True if some orientation of a simple cycle with edge set exactly `s` is
/// positive for w.
inline bool is_positive_cycle_set(const Graph& g, const Weighting& w, std::vector<EdgeId> s)
{
    std::sort(s.begin(), s.end());
    for (const Cycle& c : enumerate_cycles(g)) {
        if (c.edge_set(g) != s)
            continue;
        Cycle back = make_cycle(g, detail::reversed_cycle(g, c.edges));
        if (is_positive_cycle(w, c) || is_positive_cycle(w, back))
            return true;
    }
    return false;
}

inline CompatEntry check_contraction_compat(const Graph& g, const Weighting& w, const ContractionResult& c)
{
    CompatEntry e;
    e.witness_flows = flows(g, w);
    Cone full = cone_of_weighting(g, w);
    Cone part = restricted_cone(g, w, c);
    e.inclusion = std::all_of(part.rays().begin(), part.rays().end(), [&](const IntVector& r) { return full.contains(r); });
    e.positive_cycle = is_positive_cycle_set(g, w, c.contracted_set);
    if (e.positive_cycle)
        e.equality = part == full;
    return e;
}

inline CompatEntry check_contraction_compat(const Graph& g, const Weighting& w, const std::vector<EdgeId>& s)
{
    return check_contraction_compat(g, w, contract(g, s));
}

/// Runs the per-weighting check for every catalog witness of g.
inline CompatReport check_contraction_compat(const Graph& g, const std::vector<EdgeId>& s,
                                             const CatalogOptions& opt = {})
{
    ContractionResult c = contract(g, s);
    CompatReport r;
    for (const auto& entry : cone_catalog(g, opt))
        r.entries.push_back(check_contraction_compat(g, entry.witness, c));
    return r;
}

// ---------------------------------------------------------------------------
// Slices

struct SliceCell {
    std::size_t cone_index = 0;
    std::size_t dim = 0;                        // dimension of the cell, cone dimension minus one
    std::vector<std::vector<Rational>> points;  // on t_1 + ... + t_n = 1; polygons in boundary order
    bool maximal = false;
    std::optional<IntVector> witness_flows;
};

struct Slice {
    std::size_t ambient_dim = 0;
    std::vector<SliceCell> cells;
};

namespace detail {

inline std::vector<Rational> normalized(const IntVector& r)
{
    Integer s = 0;
    for (const auto& x : r)
        s += x;
    std::vector<Rational> p;
    for (const auto& x : r)
        p.emplace_back(x, s);
    return p;
}

/// Cyclic order of the rays of a 3-dimensional cone in Q^3: two rays are
/// consecutive iff they span a facet, i.e. are tight together on an
/// irredundant inequality.
inline std::vector<IntVector> facet_cycle_order(const Cone& c)
{
    const IntMatrix& rays = c.rays();
    if (rays.size() <= 3)
        return rays;
    HRep h = to_constraints(VRep{c.ambient_dim(), rays, {}});
    const std::size_t n = rays.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& a : h.inequalities) {
        std::vector<std::size_t> tight;
        for (std::size_t i = 0; i < n; ++i)
            if (dot(a, rays[i]).is_zero())
                tight.push_back(i);
        if (tight.size() == 2) {
            adj[tight[0]].push_back(tight[1]);
            adj[tight[1]].push_back(tight[0]);
        }
    }
    std::vector<IntVector> order{rays[0]};
    std::size_t prev = n, cur = 0;
    while (order.size() < n) {
        std::size_t nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        order.push_back(rays[nxt]);
        prev = cur;
        cur = nxt;
    }
    return order;
}

} // namespace detail

/// Intersects every non-zero cone with the hyperplane sum t = 1.
inline Slice slice_fan(const Fan& f)
{
    if (f.ambient_dim() != 2 && f.ambient_dim() != 3)
        throw Error(ErrorKind::UnsupportedDimension, "ambient dimension " + std::to_string(f.ambient_dim()));
    Slice s;
    s.ambient_dim = f.ambient_dim();
    for (std::size_t i = 0; i < f.cones().size(); ++i) {
        const FanCone& fc = f.cones()[i];
        const std::size_t d = fc.dimension();
        if (d == 0)
            continue;
        SliceCell cell;
        cell.cone_index = i;
        cell.dim = d - 1;
        cell.maximal = fc.maximal;
        cell.witness_flows = fc.witness_flows;
        for (const auto& r : d == 3 ? detail::facet_cycle_order(fc.cone) : fc.cone.rays())
            cell.points.push_back(detail::normalized(r));
        s.cells.push_back(std::move(cell));
    }
    return s;
}

} // namespace drfan
