#pragma once

// Test-only reference computations. Nothing here calls into the library's
// numerical routines, so these stay independent of the code they check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <utility>
#include <vector>

namespace farch::oracle {

using Matrix = std::vector<std::vector<double>>;

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Cyclic Jacobi rotation for small dense symmetric matrices. Returns
/// eigenvalues descending and unit-norm eigenvectors as columns.
inline std::pair<std::vector<double>, Matrix> jacobi_eigen(Matrix a) {
    const std::size_t n = a.size();
    Matrix v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-34) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k][p];
                    const double vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x][x] > a[y][y]; });
    std::vector<double> values(n);
    Matrix vectors(n, std::vector<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        values[j] = a[order[j]][order[j]];
        for (std::size_t i = 0; i < n; ++i) vectors[i][j] = v[i][order[j]];
    }
    return {values, vectors};
}

/// Direct evaluation of
///   beta(t,s;K) = 1/(N-1) sum_k sum_{j,i<=K} lambda_j^-1 <Z_k,e_j><Z_{k+1},e_i> e_j(s) e_i(t)
/// with every inner product and sum written out as a loop. z[k][p] is Z_k at
/// grid point p; the grid is the M-point midpoint grid.
inline Matrix brute_force_beta(const Matrix& z, std::size_t K) {
    const std::size_t n = z.size();
    const std::size_t m = z.front().size();
    const double w = 1.0 / static_cast<double>(m);

    Matrix c(m, std::vector<double>(m, 0.0));
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += z[k][p] * z[k][q];
            c[p][q] = acc / static_cast<double>(n);
        }
    // Operator x -> (1/M) C x has matrix C/M; eigenfunctions are sqrt(M) times
    // its unit eigenvectors.
    Matrix scaled = c;
    for (auto& row : scaled)
        for (auto& x : row) x *= w;
    auto [lambda, vec] = jacobi_eigen(scaled);
    Matrix e(m, std::vector<double>(m));
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t j = 0; j < m; ++j) e[p][j] = vec[p][j] * std::sqrt(static_cast<double>(m));

    auto inner = [&](const std::vector<double>& f, std::size_t j) {
        double acc = 0.0;
        for (std::size_t p = 0; p < m; ++p) acc += f[p] * e[p][j];
        return acc * w;
    };

    Matrix beta(m, std::vector<double>(m, 0.0));
    for (std::size_t k = 0; k + 1 < n; ++k)
        for (std::size_t j = 0; j < K; ++j)
            for (std::size_t i = 0; i < K; ++i) {
                const double coef = inner(z[k], j) * inner(z[k + 1], i) / lambda[j];
                for (std::size_t t = 0; t < m; ++t)
                    for (std::size_t s = 0; s < m; ++s) beta[t][s] += coef * e[s][j] * e[t][i];
            }
    for (auto& row : beta)
        for (auto& x : row) x /= static_cast<double>(n - 1);
    return beta;
}

/// Iterates m <- delta + (1/M) sum_j beta(t_i, s_j) m_j until the update is
/// below tol.
inline std::vector<double> iterate_fixed_point(const Matrix& beta, const std::vector<double>& delta,
                                               double tol = 1e-17) {
    const std::size_t m = delta.size();
    std::vector<double> cur = delta;
    for (int it = 0; it < 100000; ++it) {
        std::vector<double> next(m);
        double change = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < m; ++j) acc += beta[i][j] * cur[j];
            next[i] = delta[i] + acc / static_cast<double>(m);
            change = std::max(change, std::abs(next[i] - cur[i]));
        }
        cur = std::move(next);
        if (change < tol) break;
    }
    return cur;
}

}  // namespace farch::oracle
