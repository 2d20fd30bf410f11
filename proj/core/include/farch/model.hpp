#pragma once

// The functional ARCH(1) process
//   y_k = eps_k * sigma_k,    sigma_k^2 = delta + beta(y_{k-1}^2)
// with beta an integral operator with non-negative kernel.

#include "farch/funcspace.hpp"
#include "farch/innovation.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace farch {

/// Intercept curve delta and transfer kernel beta, both non-negative and on
/// one grid.
class FarchParams {
public:
    FarchParams(GridFunction delta, GridKernel beta);

    [[nodiscard]] const GridFunction& delta() const noexcept { return delta_; }
    [[nodiscard]] const GridKernel& beta() const noexcept { return beta_; }
    [[nodiscard]] const Grid& grid() const noexcept { return delta_.grid(); }

private:
    GridFunction delta_;
    GridKernel beta_;
};

/// beta(t,s) = 16 t(1-t) s(1-s), the reference kernel of the simulation study.
[[nodiscard]] GridKernel poly16_kernel(const Grid& grid);

/// Solves m = delta + beta(m) on the grid, the stationary mean of y_k^2 when
/// E eps^2 = 1. Throws InvalidInput when I - beta is singular.
[[nodiscard]] GridFunction stationary_mean(const FarchParams& params);

struct SimulationResult {
    std::vector<GridFunction> y;
    std::vector<GridFunction> sigma2;
    std::size_t burn_in = 0;
    std::uint64_t seed = 0;
};

inline constexpr std::size_t kDefaultBurnIn = 500;

/// Runs burn_in + n steps from sigma_0^2 = delta and keeps the last n. The
/// retained days use innovation days 0..n-1 and the burn-in uses days
/// -burn_in..-1, so runs with different burn-in share the retained stream.
[[nodiscard]] SimulationResult simulate(const FarchParams& params, const InnovationSpec& spec, std::size_t n,
                                        std::size_t burn_in = kDefaultBurnIn);

/// (int int beta(t,s)^2 eps2(s)^2 ds dt)^(1/2).
[[nodiscard]] double k_functional(const GridKernel& beta, const GridFunction& eps2);
/// sup_t int beta(t,s) eps2(s) ds.
[[nodiscard]] double h_functional(const GridKernel& beta, const GridFunction& eps2);

enum class StationarityFunctional { K, H };

[[nodiscard]] std::string to_string(StationarityFunctional f);
[[nodiscard]] StationarityFunctional parse_stationarity_functional(const std::string& name);

struct StationarityReport {
    StationarityFunctional functional = StationarityFunctional::K;
    double alpha = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t n_sims = 0;
    bool satisfied = false;
};

/// Monte-Carlo estimate of E[F(eps^2)^alpha] for F = K or H. `satisfied`
/// requires the estimate plus two standard errors to stay below 1.
[[nodiscard]] StationarityReport check_stationarity(const GridKernel& beta, const InnovationSpec& spec, double alpha,
                                                    StationarityFunctional functional, std::size_t n_sims);

struct CouplingEstimate {
    std::size_t m = 0;
    /// E ||sigma_k^2 - sigma_km^2||^alpha
    double sigma2 = 0.0;
    /// E ||y_k - y_km||^alpha
    double y = 0.0;
};

/// Monte-Carlo distance between sigma_k^2 and its m-dependent approximation,
/// which shares eps_{k-1..k-m} and replaces older innovations by an
/// independent copy. The infinite past is truncated to `head_length` steps
/// started from sigma^2 = delta.
[[nodiscard]] CouplingEstimate coupling_distance(const FarchParams& params, const InnovationSpec& spec, std::size_t m,
                                                 std::size_t n_reps, double alpha,
                                                 std::size_t head_length = kDefaultBurnIn);

struct LogLinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Least-squares line through (x_i, log v_i). Every v_i must be positive.
[[nodiscard]] LogLinearFit fit_log_linear(const std::vector<double>& x, const std::vector<double>& v);

}  // namespace farch
