#include "parlike/poly.hpp"

#include <numeric>

#include <Eigen/Eigenvalues>

namespace parlike {

namespace {

constexpr double kClusterRadius = 1e-3;
constexpr double kClusterCheck = 1e-6;
constexpr double kMergeRadius = 1e-7;

// Magnitude scale for |p^(k)(z)| / k!, used to judge vanishing derivatives.
double derivative_scale(const CVector& p, int k, Complex z)
{
    double s = 0.0;
    double binom = 1.0;  // C(j, k) for j = k, k+1, ...
    for (Eigen::Index j = k; j < p.size(); ++j) {
        if (j > k)
            binom = binom * double(j) / double(j - k);
        s += binom * std::abs(p(j)) * std::pow(std::abs(z), double(j - k));
    }
    return s;
}

CVector nth_derivative(const CVector& p, int k)
{
    CVector d = p;
    for (int i = 0; i < k; ++i)
        d = poly_derivative(d);
    return d;
}

Complex newton_polish(const CVector& p, Complex z, int iterations = 30)
{
    const CVector dp = poly_derivative(p);
    double best = std::abs(poly_eval(p, z));
    for (int it = 0; it < iterations && best > 0.0; ++it) {
        const Complex d = poly_eval(dp, z);
        if (d == Complex(0.0))
            break;
        const Complex next = z - poly_eval(p, z) / d;
        const double r = std::abs(poly_eval(p, next));
        if (!(r < best))
            break;
        z = next;
        best = r;
    }
    return z;
}

}  // namespace

std::vector<Complex> companion_roots(const CVector& p_in)
{
    const CVector p = poly_trim(p_in, 1e-15);
    const Eigen::Index n = p.size() - 1;
    std::vector<Complex> roots;
    if (n <= 0)
        return roots;
    if (n == 1) {
        roots.push_back(-p(0) / p(1));
        return roots;
    }
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i)
        companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < n; ++i)
        companion(i, n - 1) = -p(i) / p(n);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success)
        throw NumericalError("companion eigenvalue solver did not converge");
    for (Eigen::Index i = 0; i < n; ++i)
        roots.push_back(solver.eigenvalues()(i));
    return roots;
}

std::vector<Root> find_roots(const CVector& p_in)
{
    const CVector p = poly_trim(p_in, 1e-15);
    std::vector<Root> out;
    if (p.size() <= 1)
        return out;

    // Exact zero roots are split off so they are reported with exact value 0.
    Eigen::Index zeros = 0;
    while (zeros < p.size() - 1 && p(zeros) == Complex(0.0))
        ++zeros;
    if (zeros > 0)
        out.push_back({Complex(0.0), int(zeros), 0.0});
    const CVector q = p.tail(p.size() - zeros);

    const std::vector<Complex> raw = companion_roots(q);
    const std::size_t n = raw.size();

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i)
            i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double scale = 1.0 + std::max(std::abs(raw[i]), std::abs(raw[j]));
            if (std::abs(raw[i] - raw[j]) < kClusterRadius * scale)
                parent[find(i)] = find(j);
        }

    std::vector<std::vector<std::size_t>> clusters(n);
    for (std::size_t i = 0; i < n; ++i)
        clusters[find(i)].push_back(i);

    for (const auto& members : clusters) {
        if (members.empty())
            continue;
        const int m = int(members.size());
        if (m == 1) {
            out.push_back({newton_polish(q, raw[members[0]]), 1, 0.0});
            continue;
        }
        Complex centroid(0.0);
        for (std::size_t i : members)
            centroid += raw[i];
        centroid /= double(m);

        bool multiple = true;
        for (int k = 0; k < m && multiple; ++k) {
            const CVector dk = nth_derivative(q, k);
            const double scale = derivative_scale(q, k, centroid);
            // dk carries a k! factor relative to derivative_scale.
            double kfact = 1.0;
            for (int i = 2; i <= k; ++i)
                kfact *= double(i);
            if (std::abs(poly_eval(dk, centroid)) / kfact > kClusterCheck * scale)
                multiple = false;
        }
        if (multiple) {
            const CVector dm = nth_derivative(q, m - 1);
            out.push_back({newton_polish(dm, centroid), m, 0.0});
        } else {
            for (std::size_t i : members)
                out.push_back({newton_polish(q, raw[i]), 1, 0.0});
        }
    }

    // Merge coincident roots after polishing.
    std::vector<Root> merged;
    for (const Root& r : out) {
        bool absorbed = false;
        for (Root& s : merged) {
            if (std::abs(r.value - s.value) < kMergeRadius * (1.0 + std::abs(s.value))) {
                s.multiplicity += r.multiplicity;
                absorbed = true;
                break;
            }
        }
        if (!absorbed)
            merged.push_back(r);
    }
    for (Root& r : merged)
        r.residual = std::abs(poly_eval(p, r.value));
    std::sort(merged.begin(), merged.end(), [](const Root& a, const Root& b) {
        if (a.value.real() != b.value.real())
            return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return merged;
}

}  // namespace parlike
