#pragma once

// Slow, independent reference computations for small instances. Nothing here
// calls the double description engine or the fan builder: rays come from
// brute force over tight-constraint subsets with a private elimination
// routine, and cones are cut out by every simple cycle rather than a basis.

#include "drfan/cone.hpp"

#include <cstdint>
#include <deque>
#include <set>
#include <vector>

namespace drfan {
namespace oracle_detail {

/// Kernel of m (rows of length n) by plain Gauss-Jordan over Q.
inline std::vector<std::vector<Rational>> kernel(const IntMatrix& m, std::size_t n)
{
    std::vector<std::vector<Rational>> a;
    for (const auto& row : m)
        a.emplace_back(row.begin(), row.end());
    std::vector<int> pivot_of_col(n, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0)
            ++p;
        if (p >= a.size())
            continue;
        std::swap(a[p], a[r]);
        Rational lead = a[r][c];
        for (auto& x : a[r])
            x /= lead;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r)
                continue;
            Rational f = a[i][c];
            if (f == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                a[i][j] -= f * a[r][j];
        }
        pivot_of_col[c] = static_cast<int>(r);
        ++r;
    }
    std::vector<std::vector<Rational>> out;
    for (std::size_t f = 0; f < n; ++f) {
        if (pivot_of_col[f] >= 0)
            continue;
        std::vector<Rational> v(n, Rational(0));
        v[f] = 1;
        for (std::size_t c = 0; c < n; ++c)
            if (pivot_of_col[c] >= 0)
                v[c] = -a[pivot_of_col[c]][f];
        out.push_back(std::move(v));
    }
    return out;
}

inline IntVector scaled_primitive(const std::vector<Rational>& v)
{
    Integer l = 1;
    for (const auto& q : v)
        l = lcm(l, Integer(denominator(q)));
    IntVector r;
    Integer g = 0;
    for (const auto& q : v) {
        r.push_back(Integer(numerator(q) * (l / denominator(q))));
        g = gcd(g, r.back());
    }
    if (g > 1)
        for (auto& x : r)
            x /= g;
    return r;
}

/// Extreme rays of {t >= 0, eqs t = 0} in Q^n: for every subset T of
/// coordinates, if eqs plus t_i = 0 (i in T) has a one-dimensional solution
/// space, its non-negative generator (if any) is a ray.
inline IntMatrix rays_of_orthant_section(std::size_t n, const IntMatrix& eqs)
{
    std::set<IntVector> found;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        IntMatrix sys = eqs;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i))
                sys.push_back(unit_vector(n, i));
        auto k = kernel(sys, n);
        if (k.size() != 1)
            continue;
        IntVector v = scaled_primitive(k[0]);
        bool nonneg = true, nonpos = true;
        for (const auto& x : v) {
            nonneg = nonneg && x >= 0;
            nonpos = nonpos && x <= 0;
        }
        if (nonpos && !nonneg)
            for (auto& x : v)
                x = -x;
        else if (!nonneg)
            continue;
        found.insert(std::move(v));
    }
    return IntMatrix(found.begin(), found.end());
}

inline IntMatrix all_cycle_equations(const Graph& g, const Weighting& w, const std::vector<Cycle>& cycles)
{
    IntMatrix rows;
    for (const auto& c : cycles) {
        IntVector row(g.edge_count(), 0);
        for (HalfEdgeId h : c.edges)
            row[g.edge_of(h)] = w[h];
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::set<ConeKey> catalog(const Graph& g, const Integer& radius)
{
    const std::size_t n = g.edge_count();
    if (n > 5)
        throw Error(ErrorKind::DimensionTooLarge, std::to_string(n) + " edges");
    const Weighting base = base_weighting(g);
    const auto basis = cycle_basis(g);
    const auto cycles = enumerate_cycles(g);
    const long long r = static_cast<long long>(radius);

    std::set<ConeKey> out;
    std::vector<long long> coeff(basis.size(), -r);
    while (true) {
        Weighting w = shift_by_cycles(g, base, basis, IntVector(coeff.begin(), coeff.end()));
        out.insert(rays_of_orthant_section(n, all_cycle_equations(g, w, cycles)));
        std::size_t i = 0;
        while (i < coeff.size() && coeff[i] == r)
            coeff[i++] = -r;
        if (i == coeff.size())
            break;
        ++coeff[i];
    }

    for (const auto& c : cycles) {
        ContractionResult sub = contract(g, c.edge_set(g));
        Integer sub_radius = 2 * enumeration_bound(sub.contracted, base_weighting(sub.contracted));
        for (const ConeKey& key : catalog(sub.contracted, sub_radius)) {
            ConeKey lifted;
            for (const auto& ray : key) {
                IntVector v(n, 0);
                for (std::size_t e = 0; e < n; ++e)
                    if (sub.edge_map[e] >= 0)
                        v[e] = ray[sub.edge_map[e]];
                lifted.push_back(std::move(v));
            }
            std::sort(lifted.begin(), lifted.end());
            out.insert(std::move(lifted));
        }
    }
    return out;
}

} // namespace oracle_detail

/// Extreme rays by brute force over tight constraint subsets.
inline IntMatrix oracle_extreme_rays(const Cone& c)
{
    if (c.ambient_dim() > 5)
        throw Error(ErrorKind::DimensionTooLarge, "ambient dimension " + std::to_string(c.ambient_dim()));
    return oracle_detail::rays_of_orthant_section(c.ambient_dim(), c.equalities());
}

/// Keys (sorted primitive rays) of all cones c_w, by naive enumeration of
/// the coefficient box [-box_radius, box_radius]^h around the base weighting
/// with equations from every simple cycle, plus the contraction recursion
/// (sub-boxes of radius twice their own bound). Ambient dimension <= 5.
inline std::set<ConeKey> oracle_cone_catalog(const Graph& g, const Integer& box_radius)
{
    Integer need = enumeration_bound(g, base_weighting(g));
    if (box_radius < need)
        throw Error(ErrorKind::BoxTooSmall, "radius " + box_radius.str() + " below bound " + need.str());
    return oracle_detail::catalog(g, box_radius);
}

namespace oracle_detail {

/// Membership in {x : ineq.x >= 0, eq.x = 0}, in 64-bit arithmetic.
struct Membership {
    std::vector<std::vector<long long>> ineq, eq;

    bool operator()(const std::vector<long long>& x) const
    {
        auto val = [&](const std::vector<long long>& a) {
            long long s = 0;
            for (std::size_t i = 0; i < x.size(); ++i)
                s += a[i] * x[i];
            return s;
        };
        for (const auto& a : eq)
            if (val(a) != 0)
                return false;
        for (const auto& a : ineq)
            if (val(a) < 0)
                return false;
        return true;
    }
};

inline std::vector<long long> to_ll(const IntVector& v)
{
    std::vector<long long> r;
    for (const auto& x : v) {
        if (abs(x) > Integer(1) << 40)
            throw Error(ErrorKind::BoundTooLarge, "entry " + x.str() + " too large for the monoid oracle");
        r.push_back(static_cast<long long>(x));
    }
    return r;
}

inline bool monoid_check(std::size_t d, const Membership& inside, const IntMatrix& gens, int bound)
{
    std::vector<std::vector<long long>> g;
    long long maxgen = 0;
    for (const auto& v : gens) {
        g.push_back(to_ll(v));
        for (long long x : g.back())
            maxgen = std::max(maxgen, x < 0 ? -x : x);
    }

    // targets: lattice points of the cone in the box of radius `bound`
    auto for_box = [&](long long r, auto&& fn) {
        std::vector<long long> x(d, -r);
        while (true) {
            fn(x);
            std::size_t i = 0;
            while (i < d && x[i] == r)
                x[i++] = -r;
            if (i == d)
                return;
            ++x[i];
        }
    };

    std::vector<std::vector<long long>> targets;
    for_box(bound, [&](const std::vector<long long>& x) {
        if (inside(x))
            targets.push_back(x);
    });

    // Reachability from 0 by adding generators, with partial sums confined to
    // a box; the box grows until every target is reached or the cap is hit.
    for (long long r = bound; r <= bound + maxgen; ++r) {
        double cells = 1;
        for (std::size_t i = 0; i < d; ++i)
            cells *= static_cast<double>(2 * r + 1);
        if (cells > 3e7)
            break;
        const long long side = 2 * r + 1;
        auto index = [&](const std::vector<long long>& x) {
            long long k = 0;
            for (std::size_t i = 0; i < d; ++i)
                k = k * side + (x[i] + r);
            return static_cast<std::size_t>(k);
        };
        std::vector<char> seen(static_cast<std::size_t>(cells), 0);
        std::deque<std::vector<long long>> queue;
        std::vector<long long> origin(d, 0);
        seen[index(origin)] = 1;
        queue.push_back(origin);
        while (!queue.empty()) {
            std::vector<long long> x = std::move(queue.front());
            queue.pop_front();
            for (const auto& v : g) {
                std::vector<long long> y(d);
                bool ok = true;
                for (std::size_t i = 0; i < d && ok; ++i) {
                    y[i] = x[i] + v[i];
                    ok = y[i] >= -r && y[i] <= r;
                }
                if (!ok)
                    continue;
                std::size_t k = index(y);
                if (!seen[k]) {
                    seen[k] = 1;
                    queue.push_back(std::move(y));
                }
            }
        }
        if (std::all_of(targets.begin(), targets.end(), [&](const std::vector<long long>& t) { return seen[index(t)]; }))
            return true;
    }
    return false;
}

} // namespace oracle_detail

/// True iff every lattice point of {x : ineq.x >= 0, eq.x = 0} with
/// coordinates in [-bound, bound] was reached as a non-negative integer
/// combination of `gens`. Partial sums may leave the target box by at most
/// the largest generator entry, so a false answer can also mean that a
/// representation needs a longer excursion. bound <= 6.
inline bool oracle_monoid_check(const HRep& cone, const IntMatrix& gens, int bound)
{
    if (bound > 6 || bound < 0)
        throw Error(ErrorKind::BoundTooLarge, "bound " + std::to_string(bound));
    if (cone.dim > 5)
        throw Error(ErrorKind::DimensionTooLarge, "ambient dimension " + std::to_string(cone.dim));
    oracle_detail::Membership m;
    for (const auto& a : cone.inequalities)
        m.ineq.push_back(oracle_detail::to_ll(a));
    for (const auto& a : cone.equalities)
        m.eq.push_back(oracle_detail::to_ll(a));
    return oracle_detail::monoid_check(cone.dim, m, gens, bound);
}

inline bool oracle_monoid_check(const Cone& c, const IntMatrix& gens, int bound)
{
    HRep h{c.ambient_dim(), {}, c.equalities()};
    for (std::size_t i = 0; i < c.ambient_dim(); ++i)
        h.inequalities.push_back(unit_vector(c.ambient_dim(), i));
    return oracle_monoid_check(h, gens, bound);
}

} // namespace drfan
