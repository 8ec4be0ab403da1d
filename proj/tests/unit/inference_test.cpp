#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "tailrisk/error.hpp"
#include "tailrisk/expectile.hpp"
#include "tailrisk/inference.hpp"
#include "tailrisk/tail_index.hpp"

using namespace tailrisk;
namespace tt = tailrisk::testing;

namespace {

TailFit fit_with(double gamma, std::size_t k, std::size_t n) {
    TailFit f;
    f.gamma = gamma;
    f.k = k;
    f.tau_n = Level::from_count(k, n);
    return f;
}

RiskEstimate point_at(double value, const Level& level) {
    RiskEstimate p;
    p.value = value;
    p.level = level;
    return p;
}

}  // namespace

TEST(BlockScheme, MakeValidates) {
    const auto s = BlockScheme::make(100, 10, 5);
    EXPECT_EQ(s.count, 6u);
    EXPECT_FALSE(s.fallback);
    EXPECT_THROW(BlockScheme::make(100, 0, 5), DataError);
    EXPECT_THROW(BlockScheme::make(100, 40, 20), DataError);
}

TEST(DefaultBlocks, BigBlockLength) {
    const auto v = tt::normal_sample(1, 2500);
    const auto scheme = default_blocks(v);
    EXPECT_EQ(scheme.big, 61u);
}

TEST(DefaultBlocks, WhiteNoiseUsesOneLogN) {
    const auto v = tt::normal_sample(2, 2500);
    const auto lag = decorrelation_lag(v);
    ASSERT_TRUE(lag.has_value());
    EXPECT_LE(*lag, 2u);
    EXPECT_EQ(default_blocks(v).small, 7u);
}

TEST(DefaultBlocks, Ar1NeedsLongerGap) {
    // ACF 0.8^h first drops below 0.1 at h = 11.
    std::vector<std::size_t> lags;
    for (int seed = 0; seed < 21; ++seed) {
        const auto v = tt::ar1_t_sample(seed, 0.8, 3.0, 2500);
        const auto lag = decorrelation_lag(v);
        ASSERT_TRUE(lag.has_value());
        lags.push_back(*lag);
        const auto scheme = default_blocks(v);
        EXPECT_GE(scheme.small, *lag);
        EXPECT_GE(scheme.small, 11u);
    }
    std::nth_element(lags.begin(), lags.begin() + 10, lags.end());
    EXPECT_GE(lags[10], 9u);
    EXPECT_LE(lags[10], 13u);
}

TEST(DefaultBlocks, FallbackWhenNoLagQualifies) {
    std::vector<double> trend;
    for (int t = 0; t < 1000; ++t) trend.push_back(t);
    EXPECT_FALSE(decorrelation_lag(trend).has_value());
    const auto scheme = default_blocks(trend);
    EXPECT_TRUE(scheme.fallback);
    EXPECT_EQ(scheme.small, 100u);
}

TEST(DefaultBlocks, BivariateUsesX) {
    const auto x = tt::ar1_t_sample(4, 0.8, 3.0, 2500);
    const auto y = tt::normal_sample(5, 2500);
    const BivariateSeries b(x, y);
    EXPECT_EQ(default_blocks(b).small, default_blocks(x).small);
    EXPECT_THROW(default_blocks(tt::normal_sample(1, 99)), DataError);
}

TEST(SampleAutocorrelation, MatchesAr1Decay) {
    const auto v = tt::ar1_t_sample(6, 0.8, 30.0, 200000);
    const auto acf = sample_autocorrelation(v, 5);
    for (int h = 1; h <= 5; ++h) EXPECT_NEAR(acf[h - 1], std::pow(0.8, h), 0.02);
}

TEST(BlockVariance, EqualCountsGiveZero) {
    std::vector<double> v;
    for (int t = 0; t < 200; ++t) v.push_back((t % 10) + t * 1e-6);
    const Series s(v);
    const auto scheme = BlockScheme::make(200, 10, 0);
    EXPECT_EQ(block_variance(s, Level::from_count(20, 200), scheme, fit_with(0.4, 20, 200)), 0.0);
}

TEST(BlockVariance, RejectsShortSchemes) {
    const Series s(tt::normal_sample(1, 100));
    BlockScheme one;
    one.big = 10;
    one.count = 1;
    EXPECT_THROW(block_variance(s, Level(0.9), one, fit_with(0.3, 10, 100)), DataError);
    BlockScheme too_long;
    too_long.big = 60;
    too_long.count = 2;
    EXPECT_THROW(block_variance(s, Level(0.9), too_long, fit_with(0.3, 10, 100)), DataError);
}

TEST(BlockVariance, RankInvariant) {
    const auto v = tt::normal_sample(9, 3000);
    std::vector<double> e = v;
    for (auto& x : e) x = std::exp(x);
    const auto scheme = default_blocks(v);
    const Level tau_n = Level::from_count(150, 3000);
    const TailFit g = fit_with(0.3, 150, 3000);
    EXPECT_EQ(block_variance(Series(v), tau_n, scheme, g), block_variance(Series(e), tau_n, scheme, g));
}

TEST(BlockVariance, IidCalibration) {
    const std::size_t n = 10000, k = 500;
    const Level tau_n = Level::from_count(k, n);
    double sum = 0.0;
    for (int seed = 0; seed < 100; ++seed) {
        const Series s(tt::pareto_sample(100 + seed, 0.5, n));
        const TailFit g = hill(s, k);
        sum += block_variance(s, tau_n, default_blocks(s), g) / (g.gamma * g.gamma);
    }
    EXPECT_GE(sum / 100.0, 0.8);
    EXPECT_LE(sum / 100.0, 1.2);
}

TEST(BlockVariance, SerialDependenceInflates) {
    const std::size_t n = 10000, k = 500;
    const Level tau_n = Level::from_count(k, n);
    double sum = 0.0;
    for (int seed = 0; seed < 100; ++seed) {
        const Series s(tt::ar1_t_sample(200 + seed, 0.8, 3.0, n));
        const TailFit g = hill(s, k);
        sum += block_variance(s, tau_n, default_blocks(s), g) / (g.gamma * g.gamma);
    }
    EXPECT_GT(sum / 100.0, 1.3);
}

TEST(CiExtreme, DegenerateWidths) {
    const Level tau_n = Level::from_count(100, 2500);
    const Level tau_prime = Level::from_tail(0.0005);
    const TailFit g = fit_with(0.3, 100, 2500);
    const RiskEstimate p = point_at(2.0, tau_prime);

    auto ci = ci_extreme(p, tau_n, tau_prime, g, 0.0, 0.0, 0.95, CiVariant::d);
    EXPECT_EQ(ci.lower, 2.0);
    EXPECT_EQ(ci.upper, 2.0);

    ci = ci_extreme(p, tau_n, tau_n, g, 0.7, 0.0, 0.95, CiVariant::d);
    EXPECT_EQ(ci.lower, 2.0);
    EXPECT_EQ(ci.upper, 2.0);
}

TEST(CiExtreme, FormulaAndVariants) {
    const Level tau_n = Level::from_count(200, 8000);
    const Level tau_prime = Level::from_tail(1.0 / 8000);
    const TailFit g = fit_with(0.35, 200, 8000);
    const RiskEstimate p = point_at(0.13, tau_prime);
    const double w = 0.2, b = 0.04;
    const double z = 1.959963984540054;
    const double ratio = 200.0;  // (1 - tau_n) / (1 - tau')

    const auto d = ci_extreme(p, tau_n, tau_prime, g, w, b, 0.95, CiVariant::d);
    EXPECT_NEAR(d.lower, 0.13 * std::pow(ratio, -z * std::sqrt(w / 200)), 1e-12);
    EXPECT_NEAR(d.upper, 0.13 * std::pow(ratio, z * std::sqrt(w / 200)), 1e-12);
    EXPECT_LE(d.lower, p.value);
    EXPECT_GE(d.upper, p.value);
    EXPECT_EQ(d.w_hat, w);

    const auto adj = ci_extreme(p, tau_n, tau_prime, g, w, b, 0.95, CiVariant::d_adj);
    EXPECT_NEAR(adj.lower, 0.13 * std::pow(ratio, -b - z * std::sqrt(w / 200)), 1e-12);
    EXPECT_NEAR(adj.upper, 0.13 * std::pow(ratio, -b + z * std::sqrt(w / 200)), 1e-12);

    const auto adj0 = ci_extreme(p, tau_n, tau_prime, g, w, 0.0, 0.95, CiVariant::d_adj);
    EXPECT_EQ(adj0.lower, d.lower);
    EXPECT_EQ(adj0.upper, d.upper);

    const auto iid = ci_extreme(p, tau_n, tau_prime, g, w, b, 0.95, CiVariant::iid);
    EXPECT_EQ(iid.w_hat, 0.35 * 0.35);
    EXPECT_NEAR(iid.upper, 0.13 * std::pow(ratio, z * 0.35 / std::sqrt(200.0)), 1e-12);
}

TEST(CiExtreme, WidthNonincreasingInK) {
    const Level tau_n(0.95);
    const Level tau_prime(0.9999);
    const RiskEstimate p = point_at(1.0, tau_prime);
    double prev = 1e300;
    for (std::size_t k = 10; k <= 1000; k += 10) {
        const auto ci = ci_extreme(p, tau_n, tau_prime, fit_with(0.3, k, 20000), 0.3, 0.01, 0.9,
                                   CiVariant::d_adj);
        EXPECT_LE(ci.lower, ci.upper);
        EXPECT_LE(ci.upper - ci.lower, prev);
        prev = ci.upper - ci.lower;
    }
}

TEST(CiExtreme, RejectsBadInput) {
    const Level tau_n(0.95), tau_prime(0.999);
    const TailFit g = fit_with(0.3, 50, 1000);
    EXPECT_THROW(ci_extreme(point_at(-1.0, tau_prime), tau_n, tau_prime, g, 0.1, 0, 0.95, CiVariant::d),
                 DataError);
    EXPECT_THROW(ci_extreme(point_at(1.0, tau_prime), tau_n, tau_prime, g, 0.1, 0, 1.0, CiVariant::d),
                 DataError);
    EXPECT_THROW(ci_extreme(point_at(1.0, tau_prime), tau_n, tau_prime, g, -0.1, 0, 0.95, CiVariant::d),
                 DataError);
}

TEST(CiSeries, VariantsOnSample) {
    const Series s(tt::ar1_t_sample(42, 0.8, 3.0, 2500));
    const Level tau_n = Level::from_count(150, 2500);
    const RiskEstimate p = composite_laws(s, tau_n, Level::from_tail(1.0 / 2500));
    const auto blocks = default_blocks(s);
    const TailFit g = hill(s, 150);

    const auto iid = ci_series(p, s, tau_n, blocks, 0.95, CiVariant::iid);
    EXPECT_DOUBLE_EQ(iid.w_hat, g.gamma * g.gamma);

    const auto d = ci_series(p, s, tau_n, blocks, 0.95, CiVariant::d);
    EXPECT_EQ(d.w_hat, block_variance(s, tau_n, blocks, g));
    EXPECT_LE(d.lower, p.value);
    EXPECT_GE(d.upper, p.value);

    const auto adj0 = ci_series(p, s, tau_n, blocks, 0.95, CiVariant::d_adj, SecondOrderFit{-1.0, 0.0, 0});
    EXPECT_EQ(adj0.lower, d.lower);
    EXPECT_EQ(adj0.upper, d.upper);

    const auto adj = ci_series(p, s, tau_n, blocks, 0.95, CiVariant::d_adj);
    EXPECT_LE(adj.lower, adj.upper);
}

TEST(CiXmes, UsesXComponent) {
    const auto x = tt::pareto_sample(1, 0.4, 3000);
    const auto y = tt::pareto_sample(2, 0.3, 3000);
    const BivariateSeries b(x, y);
    const Level tau_n = Level::from_count(150, 3000);
    const RiskEstimate p = composite_xmes(b, tau_n, Level::from_tail(1.0 / 3000), XmesVariant::laws);
    const auto blocks = default_blocks(b);
    const auto via_x = ci_series(p, b.x(), tau_n, blocks, 0.95, CiVariant::d);
    const auto ci = ci_xmes(p, b, tau_n, blocks, 0.95, CiVariant::d);
    EXPECT_EQ(ci.lower, via_x.lower);
    EXPECT_EQ(ci.upper, via_x.upper);
}
