#pragma once

#include "farch/funcspace.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace farch {

enum class InnovationKind {
    /// Brownian bridge plus an independent N(0,1) scalar times sqrt(1 - t(1-t)).
    bridge_plus_normal,
    /// Stationary Ornstein-Uhlenbeck curve, cov(e(s), e(t)) = exp(-theta |t-s|).
    ou,
    /// Pointwise independent N(0, sd^2).
    gaussian_white,
};

/// Decay rate giving cov(e(s), e(t)) = 2^(-200 |t - s|).
inline const double kDefaultOuTheta = 200.0 * std::log(2.0);

/// A seedable generator of i.i.d. error curves. Day k is drawn from its own
/// RNG stream keyed by (seed, stream, k), so any subset of days can be
/// regenerated independently.
struct InnovationSpec {
    InnovationKind kind = InnovationKind::bridge_plus_normal;
    double ou_theta = kDefaultOuTheta;
    double white_sd = 1.0;
    std::uint64_t seed = 0;
    /// Separates independent copies drawn from the same seed.
    std::uint64_t stream = 0;

    void validate() const;
};

[[nodiscard]] InnovationKind parse_innovation_kind(std::string_view name);
[[nodiscard]] std::string to_string(InnovationKind kind);

/// Same kind and parameters, statistically independent draws.
[[nodiscard]] InnovationSpec independent_copy(const InnovationSpec& spec);

[[nodiscard]] GridFunction sample_innovation(const InnovationSpec& spec, const Grid& grid, std::int64_t day);

}  // namespace farch
