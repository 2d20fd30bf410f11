#include "farch/estimation.hpp"

#include "farch/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace farch {

namespace {

// Rows are days, columns grid points.
Eigen::MatrixXd stack(const std::vector<GridFunction>& curves) {
    const auto n = static_cast<Eigen::Index>(curves.size());
    const auto m = static_cast<Eigen::Index>(curves.front().size());
    Eigen::MatrixXd out(n, m);
    for (Eigen::Index k = 0; k < n; ++k) {
        require_same_grid(curves.front().grid(), curves[static_cast<std::size_t>(k)].grid(), "sample");
        out.row(k) = curves[static_cast<std::size_t>(k)].values().transpose();
    }
    return out;
}

std::string ill_conditioned_message(std::size_t k, std::size_t usable) {
    return "K=" + std::to_string(k) + " uses a numerically zero eigenvalue; largest usable K is " +
           std::to_string(usable);
}

}  // namespace

GridFunction mean_squared(const std::vector<GridFunction>& y) {
    if (y.empty()) throw EmptyInput("mean_squared needs at least one curve");
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(y.front().size()));
    for (const auto& curve : y) {
        require_same_grid(y.front().grid(), curve.grid(), "mean_squared");
        acc += curve.values().cwiseAbs2();
    }
    return GridFunction(y.front().grid(), acc / static_cast<double>(y.size()));
}

CenteredSample center(const std::vector<GridFunction>& y) {
    if (y.size() < 2) throw EmptyInput("center needs at least two curves");
    GridFunction m2 = mean_squared(y);
    std::vector<GridFunction> z;
    z.reserve(y.size());
    for (const auto& curve : y) z.emplace_back(curve.grid(), curve.values().cwiseAbs2() - m2.values());
    return CenteredSample{std::move(z), std::move(m2)};
}

GridKernel cov_operator(const CenteredSample& s) {
    if (s.z.empty()) throw EmptyInput("cov_operator needs at least one curve");
    const Eigen::MatrixXd z = stack(s.z);
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(z.cols(), z.cols());
    c.selfadjointView<Eigen::Lower>().rankUpdate(z.transpose(), 1.0 / static_cast<double>(z.rows()));
    c.triangularView<Eigen::StrictlyUpper>() = c.transpose();
    return GridKernel(s.z.front().grid(), std::move(c));
}

GridKernel cross_cov_operator(const CenteredSample& s) {
    if (s.z.size() < 2) throw EmptyInput("cross_cov_operator needs at least two curves");
    const Eigen::MatrixXd z = stack(s.z);
    const Eigen::Index n = z.rows();
    Eigen::MatrixXd c1 = z.bottomRows(n - 1).transpose() * z.topRows(n - 1) / static_cast<double>(n - 1);
    return GridKernel(s.z.front().grid(), std::move(c1));
}

std::size_t largest_usable_k(const EigenSystem& eigen) {
    if (eigen.size() == 0 || !(eigen.eigenvalue(0) > 0.0)) return 0;
    const double floor = kIllConditionedRatio * eigen.eigenvalue(0);
    std::size_t k = 0;
    while (k < eigen.size() && eigen.eigenvalue(k) > floor) ++k;
    return k;
}

Eigen::MatrixXd score_cross_covariance(const CenteredSample& s, const EigenSystem& eigen, std::size_t k) {
    if (s.z.size() < 2) throw EmptyInput("need at least two curves");
    if (k < 1 || k > eigen.size()) throw InvalidK("K must lie in [1, " + std::to_string(eigen.size()) + "]");
    require_same_grid(s.z.front().grid(), eigen.grid(), "score_cross_covariance");
    const Eigen::MatrixXd z = stack(s.z);
    const Eigen::Index n = z.rows();
    const auto kk = static_cast<Eigen::Index>(k);
    // scores(k, j) = <Z_k, e_j>
    const Eigen::MatrixXd scores = z * eigen.eigenfunctions().leftCols(kk) * eigen.grid().weight();
    return scores.topRows(n - 1).transpose() * scores.bottomRows(n - 1) / static_cast<double>(n - 1);
}

GridKernel estimate_beta(const CenteredSample& s, std::size_t k) {
    return estimate_beta(s, eigh(cov_operator(s)), k);
}

GridKernel estimate_beta(const CenteredSample& s, const EigenSystem& eigen, std::size_t k) {
    if (s.z.size() < 2) throw EmptyInput("estimate_beta needs at least two curves");
    if (k < 1 || k > eigen.size()) throw InvalidK("K must lie in [1, " + std::to_string(eigen.size()) + "]");
    const std::size_t usable = largest_usable_k(eigen);
    if (k > usable) throw IllConditioned(ill_conditioned_message(k, usable), usable);

    const auto kk = static_cast<Eigen::Index>(k);
    const Eigen::MatrixXd sigma = score_cross_covariance(s, eigen, k);
    // coef(i, j) = sigma(j, i) / lambda_j multiplies e_i(t) e_j(s).
    const Eigen::VectorXd inv_lambda = eigen.eigenvalues().head(kk).cwiseInverse();
    const Eigen::MatrixXd coef = (inv_lambda.asDiagonal() * sigma).transpose();
    const auto e = eigen.eigenfunctions().leftCols(kk);
    return GridKernel(eigen.grid(), e * coef * e.transpose());
}

std::size_t select_K(const EigenSystem& eigen, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidInput("gamma must lie in (0, 1)");
    if (eigen.size() == 0 || !(eigen.eigenvalue(0) > 0.0)) {
        throw IllConditioned("leading eigenvalue is not positive", 0);
    }
    const double lead = eigen.eigenvalue(0);
    std::size_t k = 1;
    for (std::size_t j = 1; j < eigen.size(); ++j) {
        if (eigen.eigenvalue(j) / lead >= gamma) k = j + 1;
    }
    return k;
}

DeltaEstimate estimate_delta(const GridFunction& m2_hat, const GridKernel& beta_hat, bool clip) {
    require_same_grid(m2_hat.grid(), beta_hat.grid(), "estimate_delta");
    GridFunction raw = m2_hat - apply_kernel(beta_hat, m2_hat);
    if (!clip) return DeltaEstimate{raw, raw, 0};
    Eigen::VectorXd v = raw.values();
    std::size_t clipped = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v[i] < 0.0) {
            v[i] = 0.0;
            ++clipped;
        }
    }
    return DeltaEstimate{GridFunction(raw.grid(), std::move(v)), raw, clipped};
}

FitResult fit(const std::vector<GridFunction>& y, const FitOptions& options) {
    if (y.size() < 3) throw InvalidInput("fit needs at least 3 days, got " + std::to_string(y.size()));
    if (options.k && options.gamma) throw InvalidInput("give either K or gamma, not both");

    const CenteredSample sample = center(y);
    EigenSystem eigen = eigh(cov_operator(sample));

    std::optional<double> gamma = options.gamma;
    if (!options.k && !gamma) gamma = kDefaultGamma;
    const std::size_t k = options.k ? *options.k : select_K(eigen, *gamma);

    GridKernel beta_hat = estimate_beta(sample, eigen, k);
    DeltaEstimate delta = estimate_delta(sample.m2_hat, beta_hat, options.clip_delta);

    FitDiagnostics diag;
    diag.hs_norm_beta_hat = hs_norm(beta_hat);
    diag.smallest_retained_ratio = eigen.eigenvalue(k - 1) / eigen.eigenvalue(0);
    diag.clipped_points = delta.clipped_points;

    return FitResult{std::move(beta_hat),
                     std::move(delta.delta),
                     std::move(delta.raw),
                     sample.m2_hat,
                     std::move(eigen),
                     k,
                     options.k ? std::nullopt : gamma,
                     y.size(),
                     diag};
}

GridKernel clip_negative(const GridKernel& k) { return GridKernel(k.grid(), k.values().cwiseMax(0.0)); }

GridFunction forecast_sigma2(const FitResult& fit, const GridFunction& y_last) {
    return fit.delta_hat + apply_kernel(fit.beta_hat, squared(y_last));
}

}  // namespace farch
