#pragma once

// JSON summaries and on-disk bundles for simulation runs and fits.

#include "farch/estimation.hpp"
#include "farch/model.hpp"

#include <filesystem>
#include <string>

namespace farch {

/// Single-line object: functional, alpha, estimate, std_error, n_sims, satisfied.
[[nodiscard]] std::string stationarity_report_json(const StationarityReport& report);

/// Object with K, gamma (null when K was fixed), retained eigenvalues,
/// eigenvalue ratio lambda_K/lambda_1, HS norm of beta_hat, clipped point
/// count, number of days and grid size.
[[nodiscard]] std::string fit_summary_json(const FitResult& fit);

/// Writes y.csv and sigma2.csv panels ("day,t,value") into `dir`.
void write_simulation(const std::filesystem::path& dir, const SimulationResult& result);

/// Writes beta_hat.csv, delta_hat.csv, m2_hat.csv and summary.json into `dir`.
void write_fit(const std::filesystem::path& dir, const FitResult& fit);

}  // namespace farch
