#pragma once

// Exact double description for rational polyhedral cones, possibly with
// lineality, and lattice-point generators of such cones.

#include "drfan/linalg.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <vector>

namespace drfan {

/// {x : a.x >= 0 for a in inequalities, b.x = 0 for b in equalities}
struct HRep {
    std::size_t dim = 0;
    IntMatrix inequalities;
    IntMatrix equalities;
};

/// cone(rays) + span(lineality)
struct VRep {
    std::size_t dim = 0;
    IntMatrix rays;      // primitive, sorted, extreme modulo lineality
    IntMatrix lineality; // canonical basis (RREF, primitive rows)
};

/// Incremental double description. Constraints are inserted in the order
/// given; adjacency of rays is decided combinatorially from their sets of
/// tight inequalities.
class DoubleDescription {
public:
    /// Starts from the whole space.
    explicit DoubleDescription(std::size_t dim)
        : dim_(dim)
    {
        for (std::size_t i = 0; i < dim; ++i)
            lineality_.push_back(unit_vector(dim, i));
    }

    /// Starts from the non-negative orthant; the coordinate inequalities count
    /// as the first `dim` inserted inequalities.
    static DoubleDescription orthant(std::size_t dim)
    {
        DoubleDescription dd(dim);
        dd.lineality_.clear();
        dd.inequalities_ = dim;
        for (std::size_t i = 0; i < dim; ++i) {
            Ray r{unit_vector(dim, i), boost::dynamic_bitset<>(dim)};
            r.tight.set();
            r.tight.reset(i);
            dd.rays_.push_back(std::move(r));
        }
        return dd;
    }

    void add_inequality(const IntVector& a) { insert(a, false); }
    void add_equality(const IntVector& b) { insert(b, true); }

    VRep result() const
    {
        VRep v;
        v.dim = dim_;
        for (const auto& r : rays_)
            v.rays.push_back(r.v);
        std::sort(v.rays.begin(), v.rays.end());
        v.rays.erase(std::unique(v.rays.begin(), v.rays.end()), v.rays.end());
        v.lineality = canonical_row_basis(lineality_, dim_);
        return v;
    }

private:
    struct Ray {
        IntVector v;
        boost::dynamic_bitset<> tight; // over inserted inequalities
    };

    void insert(const IntVector& a, bool equality)
    {
        if (is_zero(a))
            return;
        if (absorb_lineality(a, equality))
            return;

        std::vector<Ray> pos, zero, neg;
        std::vector<Integer> pos_val, neg_val;
        for (auto& r : rays_) {
            Integer s = dot(a, r.v);
            int sg = s.sign();
            if (sg > 0) {
                pos.push_back(std::move(r));
                pos_val.push_back(std::move(s));
            } else if (sg < 0) {
                neg.push_back(std::move(r));
                neg_val.push_back(std::move(s));
            } else {
                zero.push_back(std::move(r));
            }
        }

        std::vector<Ray> next;
        auto push_with_bit = [&](Ray r, bool tight) {
            if (!equality)
                r.tight.push_back(tight);
            next.push_back(std::move(r));
        };

        // adjacency is tested against every current ray
        std::vector<const Ray*> all;
        for (const auto* group : {&pos, &zero, &neg})
            for (const auto& r : *group)
                all.push_back(&r);
        for (std::size_t i = 0; i < pos.size(); ++i) {
            for (std::size_t j = 0; j < neg.size(); ++j) {
                boost::dynamic_bitset<> common = pos[i].tight & neg[j].tight;
                bool adjacent = true;
                for (const Ray* other : all) {
                    if (other == &pos[i] || other == &neg[j])
                        continue;
                    if (common.is_subset_of(other->tight)) {
                        adjacent = false;
                        break;
                    }
                }
                if (!adjacent)
                    continue;
                IntVector v = primitive(combine(pos_val[i], neg[j].v, -neg_val[j], pos[i].v));
                push_with_bit(Ray{std::move(v), common}, true);
            }
        }
        for (auto& r : zero)
            push_with_bit(std::move(r), true);
        if (!equality)
            for (auto& r : pos)
                push_with_bit(std::move(r), false);
        rays_ = std::move(next);
        if (!equality)
            ++inequalities_;
    }

    // If some lineality direction l0 is not orthogonal to a, project
    // everything onto a.x = 0 along l0; for an inequality l0 (oriented into
    // the half-space) becomes a new ray.
    bool absorb_lineality(const IntVector& a, bool equality)
    {
        auto it = std::find_if(lineality_.begin(), lineality_.end(),
                               [&](const IntVector& l) { return !dot(a, l).is_zero(); });
        if (it == lineality_.end())
            return false;
        IntVector l0 = std::move(*it);
        lineality_.erase(it);
        Integer c0 = dot(a, l0);
        if (c0.sign() < 0) {
            l0 = negated(std::move(l0));
            c0 = -c0;
        }
        for (auto& l : lineality_) {
            Integer c = dot(a, l);
            if (!c.is_zero())
                l = primitive(combine(c0, l, -c, l0));
        }
        for (auto& r : rays_) {
            Integer c = dot(a, r.v);
            if (!c.is_zero())
                r.v = primitive(combine(c0, r.v, -c, l0));
            if (!equality)
                r.tight.push_back(true);
        }
        if (!equality) {
            Ray nr{std::move(l0), boost::dynamic_bitset<>(inequalities_ + 1)};
            nr.tight.set();
            nr.tight.reset(inequalities_);
            rays_.push_back(std::move(nr));
            ++inequalities_;
        }
        return true;
    }

    std::size_t dim_;
    std::size_t inequalities_ = 0;
    std::vector<Ray> rays_;
    IntMatrix lineality_;
};

/// Generators of an H-described cone. Equalities go in first, then the
/// inequalities in their given order.
inline VRep to_generators(const HRep& h)
{
    DoubleDescription dd(h.dim);
    for (const auto& b : h.equalities)
        dd.add_equality(b);
    for (const auto& a : h.inequalities)
        dd.add_inequality(a);
    return dd.result();
}

/// Irredundant constraints of a V-described cone, via the generators of its
/// polar.
inline HRep to_constraints(const VRep& v)
{
    HRep polar{v.dim, v.rays, v.lineality};
    VRep pv = to_generators(polar);
    return HRep{v.dim, pv.rays, pv.lineality};
}

inline bool satisfies(const HRep& h, const IntVector& x)
{
    for (const auto& a : h.equalities)
        if (!dot(a, x).is_zero())
            return false;
    for (const auto& a : h.inequalities)
        if (dot(a, x).sign() < 0)
            return false;
    return true;
}

/// A rational polyhedral cone held in both representations.
class PolyCone {
public:
    static PolyCone from_constraints(HRep h)
    {
        PolyCone c;
        c.v_ = to_generators(h);
        c.h_ = to_constraints(c.v_);
        return c;
    }

    static PolyCone from_generators(std::size_t dim, IntMatrix rays, IntMatrix lineality = {})
    {
        for (auto& r : rays)
            r = primitive(std::move(r));
        PolyCone c;
        c.h_ = to_constraints(VRep{dim, std::move(rays), std::move(lineality)});
        c.v_ = to_generators(c.h_);
        return c;
    }

    std::size_t ambient_dim() const { return h_.dim; }
    const HRep& constraints() const { return h_; }
    const VRep& generators() const { return v_; }
    bool is_pointed() const { return v_.lineality.empty(); }

    std::size_t dimension() const
    {
        IntMatrix all = v_.rays;
        all.insert(all.end(), v_.lineality.begin(), v_.lineality.end());
        return rank(all, h_.dim);
    }

    bool contains(const IntVector& x) const { return satisfies(h_, x); }

    bool contains(const PolyCone& other) const
    {
        const auto& g = other.generators();
        return std::all_of(g.rays.begin(), g.rays.end(), [&](const IntVector& r) { return contains(r); }) &&
               std::all_of(g.lineality.begin(), g.lineality.end(),
                           [&](const IntVector& l) { return contains(l) && contains(negated(l)); });
    }

    friend bool operator==(const PolyCone& a, const PolyCone& b)
    {
        return a.ambient_dim() == b.ambient_dim() && a.contains(b) && b.contains(a);
    }

private:
    HRep h_;
    VRep v_;
};

namespace detail {

/// Lattice points of the half-open parallelepiped spanned by the linearly
/// independent `rays` (vectors in Z^dim).
inline IntMatrix parallelepiped_points(const IntMatrix& rays, std::size_t dim)
{
    const std::size_t s = rays.size();
    // basis of the saturated lattice Z^dim ∩ span(rays)
    IntMatrix ortho = nullspace(rays, dim);
    IntMatrix basis = ortho.empty() ? IntMatrix{} : kernel_lattice_basis(ortho, dim);
    if (ortho.empty())
        for (std::size_t i = 0; i < dim; ++i)
            basis.push_back(unit_vector(dim, i));

    // rays = basis * m, with m an s x s integer matrix (row-major)
    IntMatrix m(s, IntVector(s));
    for (std::size_t j = 0; j < s; ++j) {
        bool ok = false;
        auto coords = solve_in_columns(basis, rays[j], dim, ok);
        for (std::size_t i = 0; i < s; ++i)
            m[i][j] = numerator(coords[i]);
    }
    // coset representatives of Z^s / m Z^s from the lower-triangular Hermite form
    ColumnHermite ch = column_hermite(m, s);
    IntVector diag(s);
    for (std::size_t i = 0; i < s; ++i)
        diag[i] = ch.h[i][i];

    IntMatrix points;
    IntVector y(s, 0);
    while (true) {
        // lambda = m^{-1} y; the point is sum frac(lambda_j) rays_j
        IntVector target = apply_columns(basis, y, dim);
        bool ok = false;
        auto lambda = solve_in_columns(rays, target, dim, ok);
        std::vector<Rational> point(dim, Rational(0));
        for (std::size_t j = 0; j < s; ++j) {
            Rational fl = lambda[j] - Rational(Integer(numerator(lambda[j]) / denominator(lambda[j])));
            if (fl.sign() < 0)
                fl += 1;
            for (std::size_t i = 0; i < dim; ++i)
                point[i] += fl * Rational(rays[j][i]);
        }
        IntVector p(dim);
        for (std::size_t i = 0; i < dim; ++i)
            p[i] = numerator(point[i]); // integral by construction
        if (!is_zero(p))
            points.push_back(std::move(p));

        std::size_t k = 0;
        while (k < s) {
            y[k] += 1;
            if (y[k] < diag[k])
                break;
            y[k] = 0;
            ++k;
        }
        if (k == s)
            break;
    }
    return points;
}

/// Minimal generating set (Hilbert basis) of the lattice points of a pointed
/// cone: parallelepiped points of every full-rank subset of extreme rays,
/// then reducible elements are discarded.
inline IntMatrix pointed_hilbert_basis(const HRep& h, const VRep& v)
{
    const std::size_t dim = h.dim;
    const IntMatrix& rays = v.rays;
    const std::size_t s = rank(rays, dim);
    if (s == 0)
        return {};

    IntMatrix candidates = rays;
    std::vector<std::size_t> pick(s);
    auto visit = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
        if (depth == s) {
            IntMatrix sub;
            for (auto i : pick)
                sub.push_back(rays[i]);
            if (rank(sub, dim) != s)
                return;
            auto pts = parallelepiped_points(sub, dim);
            candidates.insert(candidates.end(), pts.begin(), pts.end());
            return;
        }
        for (std::size_t i = start; i + (s - depth) <= rays.size(); ++i) {
            pick[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    visit(visit, 0, 0);

    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    IntMatrix basis;
    for (const auto& x : candidates) {
        bool reducible = std::any_of(candidates.begin(), candidates.end(), [&](const IntVector& y) {
            return y != x && satisfies(h, subtract(x, y));
        });
        if (!reducible)
            basis.push_back(x);
    }
    return basis;
}

} // namespace detail

/// A finite generating set of the monoid of lattice points of `c`: the Hilbert
/// basis of the pointed part (taken in a lattice complement of the lineality)
/// together with ± a lattice basis of the lineality space. Minimal when `c`
/// is pointed.
inline IntMatrix monoid_generators(const PolyCone& c)
{
    const HRep& h = c.constraints();
    const std::size_t d = h.dim;
    IntMatrix constraint_rows = h.inequalities;
    constraint_rows.insert(constraint_rows.end(), h.equalities.begin(), h.equalities.end());

    // Unimodular change of coordinates x = u y: the constraints then only
    // involve the first p coordinates and the rest span the lineality lattice.
    ColumnHermite ch = column_hermite(constraint_rows, d);
    const std::size_t p = ch.rank;
    IntMatrix section; // first p columns of u
    for (std::size_t j = 0; j < p; ++j)
        section.push_back(column_of(ch.u, j));

    IntMatrix out;
    for (std::size_t j = p; j < d; ++j) {
        IntVector l = column_of(ch.u, j);
        out.push_back(l);
        out.push_back(negated(l));
    }

    if (p > 0) {
        auto reduce = [&](const IntMatrix& rows) {
            IntMatrix r;
            for (const auto& a : rows) {
                IntVector ra(p);
                for (std::size_t j = 0; j < p; ++j)
                    ra[j] = dot(a, section[j]);
                r.push_back(std::move(ra));
            }
            return r;
        };
        HRep pointed{p, reduce(h.inequalities), reduce(h.equalities)};
        VRep pv = to_generators(pointed);
        for (const auto& z : detail::pointed_hilbert_basis(pointed, pv))
            out.push_back(apply_columns(section, z, d));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace drfan
