#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "oracles.hpp"
#include "tailrisk/error.hpp"
#include "tailrisk/level.hpp"
#include "tailrisk/series.hpp"

using namespace tailrisk;
namespace tt = tailrisk::testing;

TEST(Level, RejectsOutOfRange) {
    EXPECT_THROW(Level(0.0), DataError);
    EXPECT_THROW(Level(1.0), DataError);
    EXPECT_THROW(Level(-0.2), DataError);
    EXPECT_THROW(Level(std::nan("")), DataError);
    EXPECT_THROW(Level::from_tail(0.0), DataError);
    EXPECT_THROW(Level::from_count(0, 10), DataError);
    EXPECT_THROW(Level::from_count(10, 10), DataError);
}

TEST(Level, KeepsTailPrecision) {
    const Level l = Level::from_tail(1e-7, LevelKind::extreme);
    EXPECT_EQ(l.tail(), 1e-7);
    EXPECT_EQ(l.kind(), LevelKind::extreme);
    EXPECT_TRUE(Level(0.9) < Level(0.99));
}

TEST(Level, TailCountRecoversK) {
    for (std::size_t n : {100u, 2500u, 8785u, 100000u}) {
        for (std::size_t k = 1; k < n; k += std::max<std::size_t>(1, n / 97)) {
            EXPECT_EQ(tail_count(n, Level::from_count(k, n)), k) << "n=" << n << " k=" << k;
            EXPECT_EQ(tail_count(n, Level(1.0 - static_cast<double>(k) / n)), k)
                << "n=" << n << " k=" << k;
        }
    }
}

TEST(Series, RejectsNonFinite) {
    EXPECT_THROW(Series({1.0, std::numeric_limits<double>::infinity()}), DataError);
    EXPECT_THROW(Series({std::nan("")}), DataError);
}

TEST(Series, SortedIsOrderedPermutation) {
    const Series s(tt::normal_sample(3, 500));
    auto v = std::vector<double>(s.values().begin(), s.values().end());
    std::sort(v.begin(), v.end());
    EXPECT_TRUE(std::equal(v.begin(), v.end(), s.sorted().begin()));
    EXPECT_EQ(s.order_stat(1), s.min());
    EXPECT_EQ(s.order_stat(500), s.max());
    EXPECT_THROW(s.order_stat(0), DataError);
    EXPECT_THROW(s.order_stat(501), DataError);
}

TEST(EmpiricalQuantile, DirectIndex) {
    EXPECT_EQ(empirical_quantile(Series({5, 3, 1, 4, 2}), Level(0.8)), 4.0);
    EXPECT_EQ(empirical_quantile(Series({7}), Level(0.5)), 7.0);
}

TEST(EmpiricalQuantile, DegenerateIndexThrows) {
    EXPECT_THROW(empirical_quantile(Series({1, 2, 3}), Level(1e-13)), DataError);
    EXPECT_THROW(empirical_quantile(Series(), Level(0.5)), DataError);
}

TEST(EmpiricalQuantile, ParetoQuantile) {
    const Series s(tt::pareto_sample(11, 0.5, 100000));
    EXPECT_NEAR(empirical_quantile(s, Level(0.99)), 10.0, 0.5);
}

TEST(EmpiricalQuantile, NondecreasingInTau) {
    const Series s(tt::normal_sample(5, 1000));
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 1; i < 1000; ++i) {
        const double q = empirical_quantile(s, Level(i / 1000.0));
        EXPECT_GE(q, prev);
        prev = q;
    }
}

TEST(EmpiricalSurvival, Counts) {
    const Series s({1, 2, 3, 4});
    EXPECT_EQ(empirical_survival(s, 2.5), 0.5);
    EXPECT_EQ(empirical_survival(s, 0.0), 1.0);
    EXPECT_EQ(empirical_survival(s, 4.0), 0.0);
}

TEST(EmpiricalSurvival, AtMostKAboveQuantile) {
    const Series s(tt::pareto_sample(8, 0.3, 2000));
    const std::size_t n = s.size();
    for (std::size_t k = 1; k < n; ++k) {
        const double q = empirical_quantile(s, Level::from_count(k, n));
        EXPECT_LE(empirical_survival(s, q), static_cast<double>(k) / n + 1e-15) << k;
    }
}

TEST(RanksToUniform, Examples) {
    const auto r = ranks_to_uniform(Series({10, 20, 30}));
    ASSERT_EQ(r.size(), 3u);
    EXPECT_DOUBLE_EQ(r[0], 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(r[1], 2.0 / 3.0);
    EXPECT_EQ(r[2], 1.0);

    const auto tie = ranks_to_uniform(Series({5, 5}));
    EXPECT_EQ(tie[0], 0.75);
    EXPECT_EQ(tie[1], 0.75);
}

TEST(RanksToUniform, RangeAndPermutationConsistency) {
    const auto values = tt::normal_sample(21, 300);
    const auto r = ranks_to_uniform(values);
    EXPECT_EQ(*std::max_element(r.begin(), r.end()), 1.0);
    for (double u : r) {
        EXPECT_GT(u, 0.0);
        EXPECT_LE(u, 1.0);
    }
    std::vector<std::size_t> perm(values.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::reverse(perm.begin(), perm.end());
    std::rotate(perm.begin(), perm.begin() + 17, perm.end());
    std::vector<double> shuffled;
    for (auto i : perm) shuffled.push_back(values[i]);
    const auto rs = ranks_to_uniform(shuffled);
    for (std::size_t j = 0; j < perm.size(); ++j) EXPECT_EQ(rs[j], r[perm[j]]);
}

TEST(RanksToUniform, TiesWithinLargerSample) {
    const auto r = ranks_to_uniform(std::vector<double>{3, 1, 3, 2, 3});
    // ranks of the three 3s are 3,4,5 -> 4
    EXPECT_DOUBLE_EQ(r[0], 0.8);
    EXPECT_DOUBLE_EQ(r[2], 0.8);
    EXPECT_DOUBLE_EQ(r[4], 0.8);
    EXPECT_DOUBLE_EQ(r[1], 0.2);
    EXPECT_DOUBLE_EQ(r[3], 0.4);
}
