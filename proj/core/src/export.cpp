#include "farch/export.hpp"

#include "farch/io.hpp"

#include <json.hpp>

namespace farch {

std::string stationarity_report_json(const StationarityReport& report) {
    nlohmann::ordered_json j;
    j["functional"] = to_string(report.functional);
    j["alpha"] = report.alpha;
    j["estimate"] = report.estimate;
    j["std_error"] = report.std_error;
    j["n_sims"] = report.n_sims;
    j["satisfied"] = report.satisfied;
    return j.dump();
}

std::string fit_summary_json(const FitResult& fit) {
    nlohmann::ordered_json j;
    j["K"] = fit.k;
    j["gamma"] = fit.gamma ? nlohmann::ordered_json(*fit.gamma) : nlohmann::ordered_json(nullptr);
    std::vector<double> retained(fit.eigen.eigenvalues().data(), fit.eigen.eigenvalues().data() + fit.k);
    j["eigenvalues_retained"] = retained;
    j["eigenvalue_ratio"] = fit.diagnostics.smallest_retained_ratio;
    j["hs_norm_beta_hat"] = fit.diagnostics.hs_norm_beta_hat;
    j["clipped_points"] = fit.diagnostics.clipped_points;
    j["n_days"] = fit.n_days;
    j["M"] = fit.beta_hat.size();
    return j.dump(2) + "\n";
}

void write_simulation(const std::filesystem::path& dir, const SimulationResult& result) {
    std::filesystem::create_directories(dir);
    write_panel_csv(dir / "y.csv", indexed_panel(result.y));
    write_panel_csv(dir / "sigma2.csv", indexed_panel(result.sigma2));
}

void write_fit(const std::filesystem::path& dir, const FitResult& fit) {
    std::filesystem::create_directories(dir);
    write_kernel_csv(dir / "beta_hat.csv", fit.beta_hat);
    write_curve_csv(dir / "delta_hat.csv", fit.delta_hat);
    write_curve_csv(dir / "m2_hat.csv", fit.m2_hat);
    write_file_atomic(dir / "summary.json", fit_summary_json(fit));
}

}  // namespace farch
