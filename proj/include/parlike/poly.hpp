#ifndef PARLIKE_POLY_HPP
#define PARLIKE_POLY_HPP

// Dense polynomial and truncated power-series algebra. Coefficients are
// stored in ascending order: p(z) = p[0] + p[1] z + ... . Series routines
// take an explicit truncation order and return vectors of length order + 1.

#include <algorithm>
#include <vector>

#include <Eigen/Core>

#include "parlike/complex.hpp"

namespace parlike {

template <typename Scalar>
using Poly = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Derived>
typename Derived::Scalar poly_eval(const Eigen::MatrixBase<Derived>& p, typename Derived::Scalar z)
{
    using Scalar = typename Derived::Scalar;
    Scalar acc(0);
    for (Eigen::Index k = p.size() - 1; k >= 0; --k)
        acc = acc * z + p(k);
    return acc;
}

template <typename Derived>
Poly<typename Derived::Scalar> poly_derivative(const Eigen::MatrixBase<Derived>& p)
{
    using Scalar = typename Derived::Scalar;
    if (p.size() <= 1)
        return Poly<Scalar>::Zero(1);
    Poly<Scalar> d(p.size() - 1);
    for (Eigen::Index k = 1; k < p.size(); ++k)
        d(k - 1) = p(k) * Scalar(double(k));
    return d;
}

template <typename DerivedA, typename DerivedB>
Poly<typename DerivedA::Scalar> poly_mul(const Eigen::MatrixBase<DerivedA>& a,
                                         const Eigen::MatrixBase<DerivedB>& b)
{
    using Scalar = typename DerivedA::Scalar;
    Poly<Scalar> out = Poly<Scalar>::Zero(a.size() + b.size() - 1);
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (Eigen::Index j = 0; j < b.size(); ++j)
            out(i + j) += a(i) * b(j);
    return out;
}

template <typename DerivedA, typename DerivedB>
Poly<typename DerivedA::Scalar> poly_add(const Eigen::MatrixBase<DerivedA>& a,
                                         const Eigen::MatrixBase<DerivedB>& b)
{
    using Scalar = typename DerivedA::Scalar;
    Poly<Scalar> out = Poly<Scalar>::Zero(std::max(a.size(), b.size()));
    out.head(a.size()) += a;
    out.head(b.size()) += b;
    return out;
}

template <typename DerivedA, typename DerivedB>
Poly<typename DerivedA::Scalar> poly_sub(const Eigen::MatrixBase<DerivedA>& a,
                                         const Eigen::MatrixBase<DerivedB>& b)
{
    using Scalar = typename DerivedA::Scalar;
    Poly<Scalar> out = Poly<Scalar>::Zero(std::max(a.size(), b.size()));
    out.head(a.size()) += a;
    out.head(b.size()) -= b;
    return out;
}

// Coefficients of q(u) = p(z0 + u).
template <typename Derived>
Poly<typename Derived::Scalar> poly_taylor_shift(const Eigen::MatrixBase<Derived>& p,
                                                 typename Derived::Scalar z0)
{
    using Scalar = typename Derived::Scalar;
    Poly<Scalar> q = p;
    const Eigen::Index n = q.size();
    // Repeated synthetic division.
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index j = n - 2; j >= k; --j)
            q(j) += z0 * q(j + 1);
    return q;
}

// Index of the highest coefficient whose magnitude exceeds tol * max|p|.
template <typename Derived>
Eigen::Index poly_degree(const Eigen::MatrixBase<Derived>& p, double tol = 0.0)
{
    double scale = 0.0;
    for (Eigen::Index k = 0; k < p.size(); ++k)
        scale = std::max(scale, double(std::abs(p(k))));
    for (Eigen::Index k = p.size() - 1; k > 0; --k)
        if (std::abs(p(k)) > tol * scale)
            return k;
    return 0;
}

template <typename Derived>
Poly<typename Derived::Scalar> poly_trim(const Eigen::MatrixBase<Derived>& p, double tol = 0.0)
{
    return p.head(poly_degree(p, tol) + 1);
}

// w^deg p(1/w), i.e. the coefficient list reversed.
template <typename Derived>
Poly<typename Derived::Scalar> poly_reverse(const Eigen::MatrixBase<Derived>& p)
{
    return p.reverse();
}

template <typename Derived>
Poly<typename Derived::Scalar> series_truncate(const Eigen::MatrixBase<Derived>& a, int order)
{
    using Scalar = typename Derived::Scalar;
    Poly<Scalar> out = Poly<Scalar>::Zero(order + 1);
    const Eigen::Index m = std::min<Eigen::Index>(a.size(), order + 1);
    out.head(m) = a.head(m);
    return out;
}

template <typename DerivedA, typename DerivedB>
Poly<typename DerivedA::Scalar> series_mul(const Eigen::MatrixBase<DerivedA>& a,
                                           const Eigen::MatrixBase<DerivedB>& b, int order)
{
    using Scalar = typename DerivedA::Scalar;
    Poly<Scalar> out = Poly<Scalar>::Zero(order + 1);
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(a.size(), order + 1); ++i) {
        if (a(i) == Scalar(0))
            continue;
        for (Eigen::Index j = 0; j < b.size() && i + j <= order; ++j)
            out(i + j) += a(i) * b(j);
    }
    return out;
}

// a / b as a power series; requires b[0] != 0.
template <typename DerivedA, typename DerivedB>
Poly<typename DerivedA::Scalar> series_div(const Eigen::MatrixBase<DerivedA>& a,
                                           const Eigen::MatrixBase<DerivedB>& b, int order)
{
    using Scalar = typename DerivedA::Scalar;
    if (b.size() == 0 || b(0) == Scalar(0))
        throw std::invalid_argument("series_div: divisor has vanishing constant term");
    Poly<Scalar> num = series_truncate(a, order);
    Poly<Scalar> q = Poly<Scalar>::Zero(order + 1);
    for (int k = 0; k <= order; ++k) {
        Scalar s = num(k);
        for (int j = 1; j <= k && j < b.size(); ++j)
            s -= b(j) * q(k - j);
        q(k) = s / b(0);
    }
    return q;
}

// a(b(x)) truncated; requires b[0] == 0.
template <typename DerivedA, typename DerivedB>
Poly<typename DerivedA::Scalar> series_compose(const Eigen::MatrixBase<DerivedA>& a,
                                               const Eigen::MatrixBase<DerivedB>& b, int order)
{
    using Scalar = typename DerivedA::Scalar;
    Poly<Scalar> inner = series_truncate(b, order);
    inner(0) = Scalar(0);
    Poly<Scalar> acc = Poly<Scalar>::Zero(order + 1);
    for (Eigen::Index k = a.size() - 1; k >= 0; --k) {
        acc = series_mul(acc, inner, order);
        acc(0) += a(k);
    }
    return acc;
}

template <typename Derived>
Poly<typename Derived::Scalar> series_pow(const Eigen::MatrixBase<Derived>& a, int power, int order)
{
    using Scalar = typename Derived::Scalar;
    Poly<Scalar> result = Poly<Scalar>::Zero(order + 1);
    result(0) = Scalar(1);
    Poly<Scalar> base = series_truncate(a, order);
    while (power > 0) {
        if (power & 1)
            result = series_mul(result, base, order);
        power >>= 1;
        if (power > 0)
            base = series_mul(base, base, order);
    }
    return result;
}

// Compositional inverse r with a(r(x)) = x; requires a[0] == 0, a[1] != 0.
template <typename Derived>
Poly<typename Derived::Scalar> series_revert(const Eigen::MatrixBase<Derived>& a, int order)
{
    using Scalar = typename Derived::Scalar;
    if (a.size() < 2 || a(1) == Scalar(0))
        throw std::invalid_argument("series_revert: series is not locally invertible");
    Poly<Scalar> r = Poly<Scalar>::Zero(order + 1);
    if (order >= 1)
        r(1) = Scalar(1) / a(1);
    for (int k = 2; k <= order; ++k) {
        const Poly<Scalar> comp = series_compose(a, r, k);
        r(k) -= comp(k) / a(1);
    }
    return r;
}

// log(a) for a series with a[0] == 1, via the integral of a'/a.
template <typename Derived>
Poly<typename Derived::Scalar> series_log(const Eigen::MatrixBase<Derived>& a, int order)
{
    using Scalar = typename Derived::Scalar;
    const Poly<Scalar> da = poly_derivative(series_truncate(a, order + 1));
    const Poly<Scalar> q = series_div(da, series_truncate(a, order), order);
    Poly<Scalar> out = Poly<Scalar>::Zero(order + 1);
    for (int k = 1; k <= order; ++k)
        out(k) = q(k - 1) / Scalar(double(k));
    return out;
}

struct Root {
    Complex value;
    int multiplicity = 1;
    double residual = 0.0;
};

// Raw eigenvalues of the companion matrix (leading coefficient trimmed).
std::vector<Complex> companion_roots(const CVector& p);

// All roots with multiplicities: companion-matrix eigenvalues, clustering of
// nearby eigenvalues, validation of each cluster against the derivatives,
// and Newton polishing on the (m-1)-th derivative of a multiplicity-m root.
// Roots that coincide within 1e-7 after polishing are merged.
std::vector<Root> find_roots(const CVector& p);

}  // namespace parlike

#endif  // PARLIKE_POLY_HPP
