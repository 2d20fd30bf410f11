#pragma once

// Moment estimators for (delta, beta) through the ARH(1) form of the squared
// curves, Z_k = y_k^2 - m2 = beta(Z_{k-1}) + nu_k.

#include "farch/funcspace.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace farch {

struct CenteredSample {
    /// Z_k = y_k^2 - m2_hat.
    std::vector<GridFunction> z;
    GridFunction m2_hat;
};

/// Eigenvalues at or below this fraction of the leading one are refused as
/// truncation levels.
inline constexpr double kIllConditionedRatio = 1e-10;

inline constexpr double kDefaultGamma = 0.01;

/// (1/N) sum_k y_k^2.
[[nodiscard]] GridFunction mean_squared(const std::vector<GridFunction>& y);

[[nodiscard]] CenteredSample center(const std::vector<GridFunction>& y);

/// C(t,s) = (1/N) sum_k Z_k(t) Z_k(s); exactly symmetric.
[[nodiscard]] GridKernel cov_operator(const CenteredSample& s);

/// C1(t,s) = (1/(N-1)) sum_{k<N} Z_{k+1}(t) Z_k(s).
[[nodiscard]] GridKernel cross_cov_operator(const CenteredSample& s);

/// Number of leading eigenvalues strictly above kIllConditionedRatio * lambda_1.
[[nodiscard]] std::size_t largest_usable_k(const EigenSystem& eigen);

/// K x K matrix with entry (j,i) = (1/(N-1)) sum_k <Z_k, e_j> <Z_{k+1}, e_i>.
[[nodiscard]] Eigen::MatrixXd score_cross_covariance(const CenteredSample& s, const EigenSystem& eigen,
                                                     std::size_t k);

/// beta_hat(t,s;K) = sum_{i,j<=K} sigma_{j,i} / lambda_j e_j(s) e_i(t), using
/// the eigenpairs of cov_operator(s). The result does not depend on the signs
/// of the eigenfunctions.
[[nodiscard]] GridKernel estimate_beta(const CenteredSample& s, std::size_t k);

/// Same estimator with caller-provided eigenpairs of the sample covariance.
[[nodiscard]] GridKernel estimate_beta(const CenteredSample& s, const EigenSystem& eigen, std::size_t k);

/// Largest K with lambda_K / lambda_1 >= gamma, at least 1.
[[nodiscard]] std::size_t select_K(const EigenSystem& eigen, double gamma);

struct DeltaEstimate {
    GridFunction delta;
    /// m2_hat - beta_hat(m2_hat) before any clipping.
    GridFunction raw;
    std::size_t clipped_points = 0;
};

[[nodiscard]] DeltaEstimate estimate_delta(const GridFunction& m2_hat, const GridKernel& beta_hat, bool clip);

struct FitOptions {
    std::optional<std::size_t> k;
    std::optional<double> gamma;
    bool clip_delta = false;
};

struct FitDiagnostics {
    double hs_norm_beta_hat = 0.0;
    /// lambda_K / lambda_1
    double smallest_retained_ratio = 0.0;
    std::size_t clipped_points = 0;
};

struct FitResult {
    GridKernel beta_hat;
    GridFunction delta_hat;
    GridFunction delta_raw;
    GridFunction m2_hat;
    EigenSystem eigen;
    std::size_t k = 0;
    std::optional<double> gamma;
    std::size_t n_days = 0;
    FitDiagnostics diagnostics;
};

/// center -> cov_operator -> eigh -> (select_K) -> estimate_beta -> estimate_delta.
/// Exactly one of options.k / options.gamma may be set; with neither, gamma
/// defaults to kDefaultGamma.
[[nodiscard]] FitResult fit(const std::vector<GridFunction>& y, const FitOptions& options = {});

/// Kernel with negative entries replaced by zero, for feeding an estimate
/// back into the simulator.
[[nodiscard]] GridKernel clip_negative(const GridKernel& k);

/// One-step-ahead variance curve delta_hat + beta_hat(y_last^2).
[[nodiscard]] GridFunction forecast_sigma2(const FitResult& fit, const GridFunction& y_last);

}  // namespace farch
