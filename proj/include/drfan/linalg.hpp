#pragma once

// Exact integer / rational vector and matrix kernels.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <tuple>
#include <utility>
#include <vector>

namespace drfan {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>; // row-major

inline Integer dot(const IntVector& a, const IntVector& b)
{
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero())
            s += a[i] * b[i];
    return s;
}

inline bool is_zero(const IntVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x.is_zero(); });
}

inline bool is_nonnegative(const IntVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x.sign() >= 0; });
}

inline Integer content(const IntVector& v)
{
    Integer g = 0;
    for (const auto& x : v) {
        if (x.is_zero())
            continue;
        g = g.is_zero() ? Integer(abs(x)) : Integer(gcd(g, x));
        if (g == 1)
            break;
    }
    return g;
}

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
inline IntVector primitive(IntVector v)
{
    Integer g = content(v);
    if (g > 1)
        for (auto& x : v)
            x /= g;
    return v;
}

/// Primitive, and first non-zero entry positive.
inline IntVector primitive_up_to_sign(IntVector v)
{
    v = primitive(std::move(v));
    auto it = std::find_if(v.begin(), v.end(), [](const Integer& x) { return !x.is_zero(); });
    if (it != v.end() && it->sign() < 0)
        for (auto& x : v)
            x = -x;
    return v;
}

inline IntVector negated(IntVector v)
{
    for (auto& x : v)
        x = -x;
    return v;
}

inline IntVector unit_vector(std::size_t dim, std::size_t i)
{
    IntVector v(dim, 0);
    v[i] = 1;
    return v;
}

/// a*x + b*y
inline IntVector combine(const Integer& a, const IntVector& x, const Integer& b, const IntVector& y)
{
    IntVector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = a * x[i] + b * y[i];
    return r;
}

inline IntVector add(const IntVector& x, const IntVector& y)
{
    return combine(1, x, 1, y);
}

inline IntVector subtract(const IntVector& x, const IntVector& y)
{
    return combine(1, x, -1, y);
}

/// Matrix (given as columns) times vector.
inline IntVector apply_columns(const IntMatrix& columns, const IntVector& coeffs, std::size_t dim)
{
    IntVector r(dim, 0);
    for (std::size_t j = 0; j < columns.size(); ++j)
        if (!coeffs[j].is_zero())
            for (std::size_t i = 0; i < dim; ++i)
                r[i] += coeffs[j] * columns[j][i];
    return r;
}

/// Scales a rational vector to the primitive integer vector on the same ray.
inline IntVector primitive_from_rational(const std::vector<Rational>& v)
{
    Integer l = 1;
    for (const auto& q : v)
        if (!q.is_zero())
            l = lcm(l, Integer(denominator(q)));
    IntVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = numerator(v[i]) * (l / denominator(v[i]));
    return primitive(std::move(r));
}

struct RowEchelon {
    std::vector<std::vector<Rational>> rows; // non-zero rows only
    std::vector<std::size_t> pivots;
};

inline RowEchelon reduced_row_echelon(const IntMatrix& m, std::size_t ncols)
{
    std::vector<std::vector<Rational>> a;
    a.reserve(m.size());
    for (const auto& row : m)
        a.emplace_back(row.begin(), row.end());

    RowEchelon out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c].is_zero())
            ++p;
        if (p == a.size())
            continue;
        std::swap(a[r], a[p]);
        Rational inv = 1 / a[r][c];
        for (auto& x : a[r])
            x *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c].is_zero())
                continue;
            Rational f = a[i][c];
            for (std::size_t j = c; j < ncols; ++j)
                a[i][j] -= f * a[r][j];
        }
        out.pivots.push_back(c);
        ++r;
    }
    a.resize(r);
    out.rows = std::move(a);
    return out;
}

inline std::size_t rank(const IntMatrix& m, std::size_t ncols)
{
    return reduced_row_echelon(m, ncols).pivots.size();
}

/// Rational kernel of `m`, one primitive integer vector per free column.
inline IntMatrix nullspace(const IntMatrix& m, std::size_t ncols)
{
    RowEchelon e = reduced_row_echelon(m, ncols);
    std::vector<bool> pivot(ncols, false);
    for (auto p : e.pivots)
        pivot[p] = true;
    IntMatrix basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (pivot[f])
            continue;
        std::vector<Rational> v(ncols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            v[e.pivots[i]] = -e.rows[i][f];
        basis.push_back(primitive_from_rational(v));
    }
    return basis;
}

/// Canonical integer basis of the row space: RREF rows scaled to primitive.
/// Two matrices have the same row space iff these are equal.
inline IntMatrix canonical_row_basis(const IntMatrix& m, std::size_t ncols)
{
    RowEchelon e = reduced_row_echelon(m, ncols);
    IntMatrix out;
    out.reserve(e.rows.size());
    for (const auto& row : e.rows)
        out.push_back(primitive_from_rational(row));
    return out;
}

/// Solves x*a + y*b = g = gcd(a, b) >= 0.
inline std::tuple<Integer, Integer, Integer> extended_gcd(const Integer& a, const Integer& b)
{
    Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (!r.is_zero()) {
        Integer q = old_r / r;
        std::tie(old_r, r) = std::make_tuple(r, Integer(old_r - q * r));
        std::tie(old_s, s) = std::make_tuple(s, Integer(old_s - q * s));
        std::tie(old_t, t) = std::make_tuple(t, Integer(old_t - q * t));
    }
    if (old_r.sign() < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

struct ColumnHermite {
    IntMatrix h;       // m * unimodular, lower-triangular column echelon form
    IntMatrix u;       // ncols x ncols unimodular (row-major)
    std::size_t rank = 0;
};

/// Column-style Hermite reduction by unimodular column operations:
/// m * u = h, where the first `rank` columns of h are in echelon form and
/// the remaining columns are zero.
inline ColumnHermite column_hermite(const IntMatrix& m, std::size_t ncols)
{
    ColumnHermite res;
    res.h = m;
    res.u.assign(ncols, IntVector(ncols, 0));
    for (std::size_t i = 0; i < ncols; ++i)
        res.u[i][i] = 1;

    auto column_op = [&](std::size_t p, std::size_t j, const Integer& a, const Integer& b,
                         const Integer& c, const Integer& d) {
        // (col_p, col_j) <- (a*col_p + b*col_j, c*col_p + d*col_j)
        auto apply = [&](IntMatrix& mat) {
            for (auto& row : mat) {
                Integer x = row[p], y = row[j];
                row[p] = a * x + b * y;
                row[j] = c * x + d * y;
            }
        };
        apply(res.h);
        apply(res.u);
    };

    std::size_t p = 0;
    for (std::size_t i = 0; i < res.h.size() && p < ncols; ++i) {
        for (std::size_t j = p + 1; j < ncols; ++j) {
            if (res.h[i][j].is_zero())
                continue;
            Integer a = res.h[i][p], b = res.h[i][j];
            auto [g, x, y] = extended_gcd(a, b);
            column_op(p, j, x, y, Integer(-b / g), Integer(a / g));
        }
        if (res.h[i][p].is_zero())
            continue;
        if (res.h[i][p].sign() < 0) {
            for (auto& row : res.h)
                row[p] = -row[p];
            for (auto& row : res.u)
                row[p] = -row[p];
        }
        ++p;
    }
    res.rank = p;
    return res;
}

inline IntVector column_of(const IntMatrix& m, std::size_t j)
{
    IntVector c(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        c[i] = m[i][j];
    return c;
}

/// Basis of the saturated lattice ker(m) ∩ Z^ncols.
inline IntMatrix kernel_lattice_basis(const IntMatrix& m, std::size_t ncols)
{
    ColumnHermite ch = column_hermite(m, ncols);
    IntMatrix basis;
    for (std::size_t j = ch.rank; j < ncols; ++j)
        basis.push_back(column_of(ch.u, j));
    return basis;
}

/// Exact solution of sum_j x_j * columns[j] = target, if one exists and the
/// columns are independent.
inline std::vector<Rational> solve_in_columns(const IntMatrix& columns, const IntVector& target,
                                              std::size_t dim, bool& ok)
{
    const std::size_t k = columns.size();
    IntMatrix aug(dim, IntVector(k + 1));
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            aug[i][j] = columns[j][i];
        aug[i][k] = target[i];
    }
    RowEchelon e = reduced_row_echelon(aug, k + 1);
    ok = e.pivots.size() == k && (e.pivots.empty() || e.pivots.back() < k);
    std::vector<Rational> x(k, Rational(0));
    if (ok)
        for (std::size_t i = 0; i < k; ++i)
            x[i] = e.rows[i][k];
    return x;
}

} // namespace drfan
