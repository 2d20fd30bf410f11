#include "farch/model.hpp"

#include "farch/error.hpp"

#include <Eigen/LU>

#include <cmath>

namespace farch {

namespace {

void require_nonnegative(const GridFunction& f, const char* what) {
    if ((f.values().array() < 0.0).any()) throw InvalidInput(std::string(what) + " must be non-negative");
}

void check_variance(const Eigen::VectorXd& sigma2) {
    if (!sigma2.allFinite()) throw NumericalFailure("conditional variance became non-finite");
    if ((sigma2.array() < 0.0).any()) throw InvariantViolation("conditional variance became negative");
}

// One step of the recursion: sigma^2 = delta + beta(y_prev^2).
Eigen::VectorXd next_variance(const FarchParams& p, const Eigen::VectorXd& y_prev) {
    return p.delta().values() + (p.beta().values() * y_prev.cwiseAbs2()) * p.grid().weight();
}

}  // namespace

FarchParams::FarchParams(GridFunction delta, GridKernel beta) : delta_(std::move(delta)), beta_(std::move(beta)) {
    require_same_grid(delta_.grid(), beta_.grid(), "FarchParams");
    if ((delta_.values().array() < 0.0).any()) throw InvalidInput("delta must be non-negative");
    if ((beta_.values().array() < 0.0).any()) throw InvalidInput("beta must be non-negative");
}

GridKernel poly16_kernel(const Grid& grid) {
    // Written as a product of equal factors so that k(t,s) == k(s,t) bit for bit.
    return GridKernel::from(grid, [](double t, double s) { return 16.0 * ((s * (1.0 - s)) * (t * (1.0 - t))); });
}

GridFunction stationary_mean(const FarchParams& params) {
    const auto m = static_cast<Eigen::Index>(params.grid().size());
    const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m) - params.beta().values() * params.grid().weight();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) throw InvalidInput("I - beta is singular; no stationary mean");
    return GridFunction(params.grid(), lu.solve(params.delta().values()));
}

SimulationResult simulate(const FarchParams& params, const InnovationSpec& spec, std::size_t n,
                          std::size_t burn_in) {
    if (n < 1) throw InvalidInput("simulate needs n >= 1");
    spec.validate();
    const Grid& grid = params.grid();

    SimulationResult out;
    out.burn_in = burn_in;
    out.seed = spec.seed;
    out.y.reserve(n);
    out.sigma2.reserve(n);

    const auto first_day = -static_cast<std::int64_t>(burn_in);
    const auto end_day = static_cast<std::int64_t>(n);
    Eigen::VectorXd sigma2 = params.delta().values();
    Eigen::VectorXd y;
    for (std::int64_t day = first_day; day < end_day; ++day) {
        if (day != first_day) sigma2 = next_variance(params, y);
        check_variance(sigma2);
        const auto eps = sample_innovation(spec, grid, day);
        y = eps.values().cwiseProduct(sigma2.cwiseSqrt());
        if (day >= 0) {
            out.sigma2.emplace_back(grid, sigma2);
            out.y.emplace_back(grid, y);
        }
    }
    return out;
}

double k_functional(const GridKernel& beta, const GridFunction& eps2) {
    require_same_grid(beta.grid(), eps2.grid(), "k_functional");
    require_nonnegative(eps2, "eps2");
    // Column j of beta is weighted by eps2(s_j)^2.
    const Eigen::RowVectorXd col_weights = eps2.values().cwiseAbs2().transpose();
    const double sum = (beta.values().cwiseAbs2().array().rowwise() * col_weights.array()).sum();
    return std::sqrt(sum) * beta.grid().weight();
}

double h_functional(const GridKernel& beta, const GridFunction& eps2) {
    require_same_grid(beta.grid(), eps2.grid(), "h_functional");
    require_nonnegative(eps2, "eps2");
    return ((beta.values() * eps2.values()) * beta.grid().weight()).maxCoeff();
}

std::string to_string(StationarityFunctional f) { return f == StationarityFunctional::K ? "K" : "H"; }

StationarityFunctional parse_stationarity_functional(const std::string& name) {
    if (name == "K") return StationarityFunctional::K;
    if (name == "H") return StationarityFunctional::H;
    throw InvalidInput("functional must be K or H, got '" + name + "'");
}

StationarityReport check_stationarity(const GridKernel& beta, const InnovationSpec& spec, double alpha,
                                      StationarityFunctional functional, std::size_t n_sims) {
    if (!(alpha > 0.0)) throw InvalidInput("alpha must be positive");
    if (n_sims < 100) throw InvalidInput("check_stationarity needs n_sims >= 100");
    spec.validate();

    // Welford accumulation of F(eps^2)^alpha.
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < n_sims; ++i) {
        const auto eps = sample_innovation(spec, beta.grid(), static_cast<std::int64_t>(i));
        const auto eps2 = squared(eps);
        const double f = functional == StationarityFunctional::K ? k_functional(beta, eps2) : h_functional(beta, eps2);
        const double v = std::pow(f, alpha);
        const double delta = v - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (v - mean);
    }
    const double n = static_cast<double>(n_sims);
    const double var = m2 / (n - 1.0);

    StationarityReport r;
    r.functional = functional;
    r.alpha = alpha;
    r.estimate = mean;
    r.std_error = std::sqrt(std::max(var, 0.0) / n);
    r.n_sims = n_sims;
    r.satisfied = r.estimate + 2.0 * r.std_error < 1.0;
    return r;
}

CouplingEstimate coupling_distance(const FarchParams& params, const InnovationSpec& spec, std::size_t m,
                                   std::size_t n_reps, double alpha, std::size_t head_length) {
    if (m < 1) throw InvalidInput("coupling_distance needs m >= 1");
    if (n_reps < 50) throw InvalidInput("coupling_distance needs n_reps >= 50");
    if (!(alpha > 0.0)) throw InvalidInput("alpha must be positive");
    spec.validate();

    const Grid& grid = params.grid();
    const InnovationSpec copy = independent_copy(spec);
    const auto head = static_cast<std::int64_t>(head_length);
    const auto shared = static_cast<std::int64_t>(m);
    // Rep r always targets the same day whatever m is, so estimates for different
    // m share their random numbers and the decay curve is not swamped by noise.
    constexpr std::int64_t stride = std::int64_t{1} << 32;
    if (head + shared >= stride) throw InvalidInput("coupling window too long");

    // Runs sigma^2 over days [start, target) with innovations from `head_spec`
    // before `switch_day` and from `spec` afterwards; returns sigma_target^2.
    auto run = [&](const InnovationSpec& head_spec, std::int64_t start, std::int64_t switch_day,
                   std::int64_t target) {
        Eigen::VectorXd sigma2 = params.delta().values();
        for (std::int64_t day = start; day < target; ++day) {
            const auto& source = day < switch_day ? head_spec : spec;
            const auto eps = sample_innovation(source, grid, day);
            const Eigen::VectorXd y = eps.values().cwiseProduct(sigma2.cwiseSqrt());
            sigma2 = next_variance(params, y);
            check_variance(sigma2);
        }
        return sigma2;
    };

    const double w = grid.weight();
    double sum_sigma = 0.0;
    double sum_y = 0.0;
    for (std::size_t r = 0; r < n_reps; ++r) {
        const std::int64_t target = static_cast<std::int64_t>(r + 1) * stride;
        const std::int64_t start = target - shared - head;
        const std::int64_t switch_day = target - shared;
        const Eigen::VectorXd original = run(spec, start, switch_day, target);
        const Eigen::VectorXd coupled = run(copy, start, switch_day, target);

        const Eigen::VectorXd diff = original - coupled;
        const auto eps = sample_innovation(spec, grid, target);
        const Eigen::VectorXd y_diff =
            eps.values().cwiseProduct(original.cwiseSqrt() - coupled.cwiseSqrt());
        sum_sigma += std::pow(std::sqrt(diff.squaredNorm() * w), alpha);
        sum_y += std::pow(std::sqrt(y_diff.squaredNorm() * w), alpha);
    }
    CouplingEstimate out;
    out.m = m;
    out.sigma2 = sum_sigma / static_cast<double>(n_reps);
    out.y = sum_y / static_cast<double>(n_reps);
    return out;
}

LogLinearFit fit_log_linear(const std::vector<double>& x, const std::vector<double>& v) {
    if (x.size() != v.size() || x.size() < 2) throw InvalidInput("log-linear fit needs >= 2 paired points");
    const auto n = static_cast<double>(x.size());
    double sx = 0.0;
    double sy = 0.0;
    std::vector<double> ly(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0)) throw InvalidInput("log-linear fit needs positive values");
        ly[i] = std::log(v[i]);
        sx += x[i];
        sy += ly[i];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) throw InvalidInput("log-linear fit needs distinct x values");
    LogLinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

}  // namespace farch
