#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "tcx/linalg.hpp"

namespace testutil {

// Householder reduction to tridiagonal form (diagonal d, off-diagonal e, e[0] unused).
inline void tridiagonalize(const tcx::Matrix& a, std::vector<double>& d, std::vector<double>& e) {
    const std::size_t n = a.rows();
    std::vector<double> m(a.data());
    auto at = [&](std::size_t i, std::size_t j) -> double& { return m[i * n + j]; };
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double alpha = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) alpha += at(i, k) * at(i, k);
        alpha = std::sqrt(alpha);
        if (alpha == 0.0) continue;
        if (at(k + 1, k) > 0) alpha = -alpha;
        std::vector<double> v(n, 0.0);
        v[k + 1] = at(k + 1, k) - alpha;
        for (std::size_t i = k + 2; i < n; ++i) v[i] = at(i, k);
        double vv = 0.0;
        for (double x : v) vv += x * x;
        if (vv == 0.0) continue;
        // m <- H m H with H = I - 2 v v^T / vv
        std::vector<double> p(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) p[i] += at(i, j) * v[j];
        for (double& x : p) x *= 2.0 / vv;
        double kk = 0.0;
        for (std::size_t i = 0; i < n; ++i) kk += v[i] * p[i];
        kk /= vv;
        for (std::size_t i = 0; i < n; ++i) p[i] -= kk * v[i];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) at(i, j) -= v[i] * p[j] + p[i] * v[j];
    }
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) d[i] = at(i, i);
    for (std::size_t i = 1; i < n; ++i) e[i] = at(i, i - 1);
}

// Sturm count: eigenvalues of the tridiagonal matrix below x.
inline int count_below(const std::vector<double>& d, const std::vector<double>& e, double x) {
    int neg = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        q = d[i] - x - (i ? e[i] * e[i] / q : 0.0);
        if (q == 0.0) q = -1e-300;
        if (q < 0.0) ++neg;
    }
    return neg;
}

// All eigenvalues by bisection on Sturm counts; independent of the Jacobi path.
inline std::vector<double> bisection_eigenvalues(const tcx::Matrix& a, double tol = 1e-15) {
    std::vector<double> d, e;
    tridiagonalize(a, d, e);
    const std::size_t n = d.size();
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r = std::max(r, std::abs(d[i]) + std::abs(e[i]) + (i + 1 < n ? std::abs(e[i + 1]) : 0.0));
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        double lo = -r - 1.0, hi = r + 1.0;
        for (int it = 0; it < 300 && hi - lo > tol * std::max(1.0, std::abs(hi)); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (count_below(d, e, mid) > static_cast<int>(k)) hi = mid;
            else lo = mid;
        }
        out[k] = 0.5 * (lo + hi);
    }
    return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace testutil
