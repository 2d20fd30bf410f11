#include "farch/innovation.hpp"

#include "farch/error.hpp"

#include <random>

namespace farch {

namespace {

std::mt19937_64 day_engine(const InnovationSpec& spec, std::int64_t day) {
    const auto k = static_cast<std::uint64_t>(day);
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(spec.stream), static_cast<std::uint32_t>(spec.stream >> 32),
                      static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    return std::mt19937_64(seq);
}

// Exact joint law of a standard Brownian bridge at increasing points in (0,1):
// given B(u) = b, B(t) ~ N(b (1-t)/(1-u), (t-u)(1-t)/(1-u)).
Eigen::VectorXd bridge_plus_normal(const Grid& grid, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto m = static_cast<Eigen::Index>(grid.size());
    Eigen::VectorXd out(m);
    double prev_t = 0.0;
    double prev_b = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        const double t = grid.point(static_cast<std::size_t>(i));
        const double mean = prev_b * (1.0 - t) / (1.0 - prev_t);
        const double var = (t - prev_t) * (1.0 - t) / (1.0 - prev_t);
        prev_b = mean + std::sqrt(var) * normal(rng);
        prev_t = t;
        out[i] = prev_b;
    }
    const double level = normal(rng);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double t = grid.point(static_cast<std::size_t>(i));
        out[i] += level * std::sqrt(1.0 - t * (1.0 - t));
    }
    return out;
}

Eigen::VectorXd stationary_ou(const Grid& grid, double theta, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto m = static_cast<Eigen::Index>(grid.size());
    const double rho = std::exp(-theta * grid.weight());
    const double innovation_sd = std::sqrt(1.0 - rho * rho);
    Eigen::VectorXd out(m);
    out[0] = normal(rng);
    for (Eigen::Index i = 1; i < m; ++i) out[i] = rho * out[i - 1] + innovation_sd * normal(rng);
    return out;
}

Eigen::VectorXd white(const Grid& grid, double sd, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, sd);
    Eigen::VectorXd out(static_cast<Eigen::Index>(grid.size()));
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = normal(rng);
    return out;
}

}  // namespace

void InnovationSpec::validate() const {
    switch (kind) {
        case InnovationKind::bridge_plus_normal:
            return;
        case InnovationKind::ou:
            if (!(ou_theta > 0.0) || !std::isfinite(ou_theta)) throw InvalidInput("ou decay rate must be positive");
            return;
        case InnovationKind::gaussian_white:
            if (!(white_sd > 0.0) || !std::isfinite(white_sd)) throw InvalidInput("white noise sd must be positive");
            return;
    }
    throw UnknownInnovation("unknown innovation kind");
}

InnovationKind parse_innovation_kind(std::string_view name) {
    if (name == "bridge" || name == "bridge_plus_normal") return InnovationKind::bridge_plus_normal;
    if (name == "ou") return InnovationKind::ou;
    if (name == "white" || name == "gaussian_white") return InnovationKind::gaussian_white;
    throw UnknownInnovation("unknown innovation '" + std::string(name) + "'");
}

std::string to_string(InnovationKind kind) {
    switch (kind) {
        case InnovationKind::bridge_plus_normal:
            return "bridge_plus_normal";
        case InnovationKind::ou:
            return "ou";
        case InnovationKind::gaussian_white:
            return "gaussian_white";
    }
    throw UnknownInnovation("unknown innovation kind");
}

InnovationSpec independent_copy(const InnovationSpec& spec) {
    InnovationSpec copy = spec;
    copy.stream = spec.stream + 0x9e3779b97f4a7c15ULL;
    return copy;
}

GridFunction sample_innovation(const InnovationSpec& spec, const Grid& grid, std::int64_t day) {
    spec.validate();
    auto rng = day_engine(spec, day);
    switch (spec.kind) {
        case InnovationKind::bridge_plus_normal:
            return GridFunction(grid, bridge_plus_normal(grid, rng));
        case InnovationKind::ou:
            return GridFunction(grid, stationary_ou(grid, spec.ou_theta, rng));
        case InnovationKind::gaussian_white:
            return GridFunction(grid, white(grid, spec.white_sd, rng));
    }
    throw UnknownInnovation("unknown innovation kind");
}

}  // namespace farch
