#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tailrisk/estimate.hpp"
#include "tailrisk/mes.hpp"
#include "tailrisk/series.hpp"
#include "tailrisk/tail_index.hpp"

namespace tailrisk {

/// Big blocks of length `big` separated by small blocks of length `small`;
/// `count` = floor(n / (big + small)) complete pairs. Trailing observations
/// after the last complete pair are not used.
struct BlockScheme {
    std::size_t big = 1;
    std::size_t small = 0;
    std::size_t count = 0;
    // The autocorrelation rule found no qualifying lag; small = floor(n/10).
    bool fallback = false;

    // Throws DataError if big == 0 or fewer than 2 blocks fit into n.
    static BlockScheme make(std::size_t n, std::size_t big, std::size_t small);
};

inline constexpr double kAcfCutoff = 0.1;

/// Sample autocorrelation at lags 1..max_lag (biased, divisor n).
std::vector<double> sample_autocorrelation(std::span<const double> values, std::size_t max_lag);

/// First lag h in 1..floor(n/4) at which the autocorrelations of the series
/// and of its squares are both below 0.1 in absolute value.
std::optional<std::size_t> decorrelation_lag(std::span<const double> values);

/// big = floor(log^2 n); small = floor(C log n) with C the smallest positive
/// integer making small >= decorrelation_lag. Requires n >= 100.
BlockScheme default_blocks(std::span<const double> values);
BlockScheme default_blocks(const Series& s);
/// Uses the x component, whose tail index drives the interval.
BlockScheme default_blocks(const BivariateSeries& b);

/// w = gamma^2 Var(Z_j) / (big (1 - tau_n)), where Z_j counts the
/// observations of big block j whose empirical cdf value exceeds tau_n, and
/// Var is the sample variance with divisor count - 1.
double block_variance(const Series& s, const Level& tau_n, const BlockScheme& blocks,
                      const TailFit& gamma);

/// Equi-tailed interval point * ((1 - tau_n)/(1 - tau'))^{-b +- z sqrt(w / k)}
/// with k = gamma.k and z the (1 + level)/2 normal quantile.
///
/// The variant fixes which of the supplied inputs are used: iid replaces w by
/// gamma^2 and drops b, d drops b, d_adj uses both.
ConfidenceInterval ci_extreme(const RiskEstimate& point, const Level& tau_n,
                              const Level& tau_prime, const TailFit& gamma, double w_hat,
                              double b_hat, double level, CiVariant variant);

/// Everything needed to turn a point estimate into an interval on one
/// series: Hill at tau_n, the block variance, and (for d_adj) the bias term.
/// The extreme level is taken from point.level. `second_order_override`
/// replaces the fitted (rho, beta).
ConfidenceInterval ci_series(const RiskEstimate& point, const Series& s, const Level& tau_n,
                             const BlockScheme& blocks, double level, CiVariant variant,
                             const std::optional<SecondOrderFit>& second_order_override = {});

/// Interval for a composite XMES or Weissman QMES estimate, computed on the
/// x component.
ConfidenceInterval ci_xmes(const RiskEstimate& point, const BivariateSeries& b,
                           const Level& tau_n, const BlockScheme& blocks, double level,
                           CiVariant variant,
                           const std::optional<SecondOrderFit>& second_order_override = {});

}  // namespace tailrisk
