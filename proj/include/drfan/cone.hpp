#pragma once

// Cones of thicknesses: pointed rational cones {t >= 0 : A t = 0} inside the
// non-negative orthant of Q^E, and the cone c_w of a weighting.

#include "drfan/polyhedral.hpp"
#include "drfan/weighting.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

namespace drfan {

/// Sorted list of primitive extreme rays. For pointed cones, equal keys
/// mean equal cones.
using ConeKey = IntMatrix;

class Cone {
public:
    Cone() = default;

    /// {t in Q^dim : t >= 0, e.t = 0 for e in equalities}
    Cone(std::size_t ambient_dim, const IntMatrix& equalities)
        : dim_(ambient_dim)
        , equalities_(canonical_row_basis(equalities, ambient_dim))
    {
        DoubleDescription dd = DoubleDescription::orthant(dim_);
        for (const auto& e : equalities_)
            dd.add_equality(e);
        rays_ = dd.result().rays;
    }

    static Cone orthant(std::size_t ambient_dim) { return Cone(ambient_dim, {}); }

    /// The cone cut out of the orthant by the linear span of `rays`. Throws
    /// ValidationError unless its extreme rays are exactly the given ones,
    /// i.e. unless the rays span a face-type section of the orthant.
    static Cone from_rays(std::size_t ambient_dim, const IntMatrix& rays)
    {
        IntMatrix given;
        for (const auto& r : rays) {
            if (r.size() != ambient_dim)
                throw Error(ErrorKind::AmbientMismatch, "ray of length " + std::to_string(r.size()));
            given.push_back(primitive(r));
        }
        std::sort(given.begin(), given.end());
        given.erase(std::unique(given.begin(), given.end()), given.end());
        Cone c(ambient_dim, nullspace(given, ambient_dim));
        if (c.rays() != given)
            throw Error(ErrorKind::ValidationError, "rays do not span a section of the orthant");
        return c;
    }

    std::size_t ambient_dim() const { return dim_; }
    /// Canonical (reduced echelon, primitive) basis of the equality system.
    const IntMatrix& equalities() const { return equalities_; }
    const IntMatrix& rays() const { return rays_; }
    const ConeKey& key() const { return rays_; }
    std::size_t dimension() const { return rank(rays_, dim_); }
    bool is_zero() const { return rays_.empty(); }

    bool contains(const IntVector& t) const
    {
        if (!is_nonnegative(t))
            return false;
        return std::all_of(equalities_.begin(), equalities_.end(),
                           [&](const IntVector& e) { return dot(e, t).is_zero(); });
    }

    /// Coordinates on which every point of the cone vanishes.
    std::vector<bool> zero_coordinates() const
    {
        std::vector<bool> z(dim_, true);
        for (const auto& r : rays_)
            for (std::size_t i = 0; i < dim_; ++i)
                if (!r[i].is_zero())
                    z[i] = false;
        return z;
    }

    /// The face cut out by t_i = 0 for every i with zero[i].
    Cone face(const std::vector<bool>& zero) const
    {
        IntMatrix eqs = equalities_;
        for (std::size_t i = 0; i < dim_; ++i)
            if (zero[i])
                eqs.push_back(unit_vector(dim_, i));
        IntMatrix rays;
        for (const auto& r : rays_) {
            bool keep = true;
            for (std::size_t i = 0; i < dim_ && keep; ++i)
                keep = !(zero[i] && !r[i].is_zero());
            if (keep)
                rays.push_back(r);
        }
        return Cone(dim_, canonical_row_basis(eqs, dim_), std::move(rays));
    }

    /// Re-embeds into a larger orthant: coordinate i goes to position
    /// coordinate_map[i]; the other coordinates vanish.
    Cone embed(std::size_t ambient_dim, const std::vector<std::size_t>& coordinate_map) const
    {
        std::vector<bool> hit(ambient_dim, false);
        IntMatrix eqs;
        for (const auto& e : equalities_) {
            IntVector row(ambient_dim, 0);
            for (std::size_t i = 0; i < dim_; ++i)
                row[coordinate_map[i]] = e[i];
            eqs.push_back(std::move(row));
        }
        for (std::size_t i = 0; i < dim_; ++i)
            hit[coordinate_map[i]] = true;
        for (std::size_t j = 0; j < ambient_dim; ++j)
            if (!hit[j])
                eqs.push_back(unit_vector(ambient_dim, j));
        IntMatrix rays;
        for (const auto& r : rays_) {
            IntVector v(ambient_dim, 0);
            for (std::size_t i = 0; i < dim_; ++i)
                v[coordinate_map[i]] = r[i];
            rays.push_back(std::move(v));
        }
        std::sort(rays.begin(), rays.end());
        return Cone(ambient_dim, canonical_row_basis(eqs, ambient_dim), std::move(rays));
    }

    PolyCone as_poly_cone() const { return PolyCone::from_generators(dim_, rays_); }

    friend bool operator==(const Cone& a, const Cone& b) { return a.dim_ == b.dim_ && a.rays_ == b.rays_; }

private:
    Cone(std::size_t dim, IntMatrix equalities, IntMatrix rays)
        : dim_(dim)
        , equalities_(std::move(equalities))
        , rays_(std::move(rays))
    {
    }

    std::size_t dim_ = 0;
    IntMatrix equalities_;
    IntMatrix rays_;
};

/// w_gamma(e) for each edge of the cycle: the value on the directed edge's
/// source half, at the edge's coordinate.
inline IntVector cycle_vector(const Graph& g, const Weighting& w, const Cycle& c)
{
    IntVector row(g.edge_count(), 0);
    for (HalfEdgeId h : c.edges)
        row[g.edge_of(h)] = w[h];
    return row;
}

/// One equality per basis cycle. Compatibility around any cycle follows,
/// because the constraint is linear in the cycle class.
inline IntMatrix compatibility_equations(const Graph& g, const Weighting& w, const std::vector<Cycle>& basis)
{
    IntMatrix rows;
    for (const auto& b : basis)
        rows.push_back(cycle_vector(g, w, b));
    return rows;
}

inline Cone cone_of_weighting(const Graph& g, const Weighting& w, const std::vector<Cycle>& basis)
{
    return Cone(g.edge_count(), compatibility_equations(g, w, basis));
}

inline Cone cone_of_weighting(const Graph& g, const Weighting& w)
{
    return cone_of_weighting(g, w, cycle_basis(g));
}

inline const IntMatrix& extreme_rays(const Cone& c)
{
    return c.rays();
}

inline const ConeKey& canonical_key(const Cone& c)
{
    return c.key();
}

/// All faces, {0} and c included, ordered by (dimension, key).
inline std::vector<Cone> faces(const Cone& c)
{
    std::map<std::pair<std::size_t, ConeKey>, Cone> found;
    std::vector<Cone> frontier{c};
    std::set<ConeKey> seen{c.key()};
    found.emplace(std::make_pair(c.dimension(), c.key()), c);
    while (!frontier.empty()) {
        std::vector<Cone> next;
        for (const auto& f : frontier) {
            std::vector<bool> zero = f.zero_coordinates();
            for (std::size_t i = 0; i < c.ambient_dim(); ++i) {
                if (zero[i])
                    continue;
                std::vector<bool> z = zero;
                z[i] = true;
                Cone sub = f.face(z);
                if (seen.insert(sub.key()).second) {
                    found.emplace(std::make_pair(sub.dimension(), sub.key()), sub);
                    next.push_back(std::move(sub));
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<Cone> out;
    out.reserve(found.size());
    for (auto& [k, f] : found)
        out.push_back(std::move(f));
    return out;
}

inline Cone intersect_cones(const Cone& a, const Cone& b)
{
    if (a.ambient_dim() != b.ambient_dim())
        throw Error(ErrorKind::AmbientMismatch,
                    std::to_string(a.ambient_dim()) + " vs " + std::to_string(b.ambient_dim()));
    IntMatrix eqs = a.equalities();
    eqs.insert(eqs.end(), b.equalities().begin(), b.equalities().end());
    return Cone(a.ambient_dim(), eqs);
}

/// f is a face of c iff f's rays are rays of c and are exactly the rays of c
/// vanishing wherever all of f vanishes.
inline bool is_face_of(const Cone& f, const Cone& c)
{
    if (f.ambient_dim() != c.ambient_dim())
        throw Error(ErrorKind::AmbientMismatch,
                    std::to_string(f.ambient_dim()) + " vs " + std::to_string(c.ambient_dim()));
    const auto& cr = c.rays();
    for (const auto& r : f.rays())
        if (!std::binary_search(cr.begin(), cr.end(), r))
            return false;
    return c.face(f.zero_coordinates()).key() == f.key();
}

/// {u : u.r >= 0 for every ray r of c}
inline PolyCone polar_dual(const Cone& c)
{
    return PolyCone::from_constraints(HRep{c.ambient_dim(), c.rays(), {}});
}

/// Unit vectors for every edge, then ±(cycle vector) for every basis cycle.
/// Any cycle vector is an integer combination of the basis ones, so these span
/// the same cone as the unit vectors together with all cycle vectors.
inline IntMatrix dual_cone_generators(const Graph& g, const Weighting& w, const std::vector<Cycle>& basis)
{
    IntMatrix gens;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        gens.push_back(unit_vector(g.edge_count(), e));
    for (const auto& b : basis) {
        IntVector d = cycle_vector(g, w, b);
        gens.push_back(d);
        gens.push_back(negated(std::move(d)));
    }
    return gens;
}

inline IntMatrix dual_cone_generators(const Graph& g, const Weighting& w)
{
    return dual_cone_generators(g, w, cycle_basis(g));
}

inline IntMatrix monoid_generators(const Cone& c)
{
    return monoid_generators(c.as_poly_cone());
}

} // namespace drfan
