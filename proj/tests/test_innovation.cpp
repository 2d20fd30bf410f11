#include "farch/error.hpp"
#include "farch/innovation.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace farch;

namespace {

InnovationSpec spec_of(InnovationKind kind, std::uint64_t seed = 5) {
    InnovationSpec s;
    s.kind = kind;
    s.seed = seed;
    return s;
}

// Per-point mean and standard error of eps^2 over n draws.
void squared_moments(const InnovationSpec& spec, const Grid& g, int n, Eigen::VectorXd& mean, Eigen::VectorXd& se) {
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.size()));
    Eigen::VectorXd sum_sq = sum;
    for (int k = 0; k < n; ++k) {
        const Eigen::VectorXd e2 = sample_innovation(spec, g, k).values().cwiseAbs2();
        sum += e2;
        sum_sq += e2.cwiseAbs2();
    }
    mean = sum / n;
    const Eigen::VectorXd var = (sum_sq / n - mean.cwiseAbs2()) * (static_cast<double>(n) / (n - 1));
    se = (var / n).cwiseSqrt();
}

}  // namespace

TEST(Innovation, DeterministicPerSeedAndDay) {
    const Grid g(50);
    for (auto kind : {InnovationKind::bridge_plus_normal, InnovationKind::ou, InnovationKind::gaussian_white}) {
        const auto s = spec_of(kind);
        EXPECT_EQ(sample_innovation(s, g, 17).values(), sample_innovation(s, g, 17).values());
        EXPECT_NE(sample_innovation(s, g, 17).values(), sample_innovation(s, g, 18).values());
        EXPECT_NE(sample_innovation(s, g, -3).values(), sample_innovation(s, g, 3).values());
        EXPECT_NE(sample_innovation(s, g, 17).values(), sample_innovation(spec_of(kind, 6), g, 17).values());
        EXPECT_NE(sample_innovation(s, g, 17).values(), sample_innovation(independent_copy(s), g, 17).values());
    }
}

TEST(Innovation, UnitSecondMomentWithinFourStandardErrors) {
    const Grid g(50);
    for (auto kind : {InnovationKind::bridge_plus_normal, InnovationKind::ou, InnovationKind::gaussian_white}) {
        Eigen::VectorXd mean, se;
        squared_moments(spec_of(kind, 123), g, 10000, mean, se);
        for (Eigen::Index i = 0; i < mean.size(); ++i) {
            EXPECT_LE(std::abs(mean[i] - 1.0), 4.0 * se[i]) << to_string(kind) << " at t_" << i;
        }
    }
}

TEST(Innovation, BridgePlusNormalCovariance) {
    // cov(e(s), e(t)) = min(s,t) - s t + sqrt(1 - s(1-s)) sqrt(1 - t(1-t))
    const Grid g(10);
    const auto s = spec_of(InnovationKind::bridge_plus_normal, 77);
    const int n = 20000;
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(10, 10);
    for (int k = 0; k < n; ++k) {
        const Eigen::VectorXd e = sample_innovation(s, g, k).values();
        acc += e * e.transpose();
    }
    acc /= n;
    for (std::size_t i = 0; i < 10; ++i) {
        for (std::size_t j = 0; j < 10; ++j) {
            const double a = g.point(i), b = g.point(j);
            const double expected = std::min(a, b) - a * b + std::sqrt(1 - a * (1 - a)) * std::sqrt(1 - b * (1 - b));
            EXPECT_NEAR(acc(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), expected, 0.05);
        }
    }
}

TEST(Innovation, OuLagCovarianceIsHalfAtFiveThousandths) {
    // On M=200 one grid step is 0.005 and 2^(-200 * 0.005) = 1/2.
    const Grid g(200);
    const auto s = spec_of(InnovationKind::ou, 31);
    const int n = 10000;
    double cov = 0.0;
    for (int k = 0; k < n; ++k) {
        const auto e = sample_innovation(s, g, k);
        cov += e[80] * e[81];
    }
    cov /= n;
    EXPECT_NEAR(cov, 0.5, 0.02);
}

TEST(Innovation, WhiteNoiseScale) {
    const Grid g(50);
    auto s = spec_of(InnovationKind::gaussian_white, 8);
    s.white_sd = 2.0;
    double acc = 0.0;
    for (int k = 0; k < 2000; ++k) acc += sample_innovation(s, g, k).values().squaredNorm();
    EXPECT_NEAR(acc / (2000.0 * 50.0), 4.0, 0.1);
}

TEST(Innovation, Validation) {
    const Grid g(5);
    auto s = spec_of(InnovationKind::ou);
    s.ou_theta = -1.0;
    EXPECT_THROW((void)sample_innovation(s, g, 0), InvalidInput);
    s = spec_of(InnovationKind::gaussian_white);
    s.white_sd = 0.0;
    EXPECT_THROW((void)sample_innovation(s, g, 0), InvalidInput);
    s.kind = static_cast<InnovationKind>(42);
    EXPECT_THROW((void)sample_innovation(s, g, 0), UnknownInnovation);
    EXPECT_THROW((void)parse_innovation_kind("cauchy"), UnknownInnovation);
    EXPECT_EQ(parse_innovation_kind("bridge"), InnovationKind::bridge_plus_normal);
    EXPECT_EQ(parse_innovation_kind("ou"), InnovationKind::ou);
    EXPECT_EQ(parse_innovation_kind("white"), InnovationKind::gaussian_white);
}
