#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tailrisk/estimate.hpp"
#include "tailrisk/expectile.hpp"
#include "tailrisk/series.hpp"

namespace tailrisk {

// Aligned (X_t, Y_t) pairs: X the firm loss return, Y the market loss return.
class BivariateSeries {
public:
    BivariateSeries() = default;

    // Throws DataError unless x and y have equal length.
    BivariateSeries(std::vector<double> x, std::vector<double> y);

    std::size_t size() const noexcept { return x_.size(); }
    const Series& x() const noexcept { return x_; }
    const Series& y() const noexcept { return y_; }

private:
    Series x_;
    Series y_;
};

enum class ThresholdKind { quantile, laws_expectile, qb_expectile };

struct MesSpec {
    ThresholdKind threshold = ThresholdKind::quantile;
    Level tau_n{0.5};
    Level tau_prime{0.5};
    TailFit gamma_x;
    std::optional<TailFit> gamma_y;  // required for qb_expectile thresholds
};

/// sum X_t 1{X_t > 0, Y_t > z} / sum 1{Y_t > z}.
/// Throws DataError when no Y_t exceeds z.
double mes_tail_ratio(const BivariateSeries& b, double z_bar);

/// Intermediate threshold on y at tau_n for the given threshold kind.
double mes_threshold(const BivariateSeries& b, ThresholdKind kind, const Level& tau_n,
                     const std::optional<TailFit>& gamma_y, const ExpectileConfig& cfg = {});

/// ((1 - tau') / (1 - tau_n))^{-gamma_X} times the tail ratio at the
/// intermediate threshold. Kind is qmes for quantile thresholds, xmes otherwise.
RiskEstimate mes_extrapolated(const BivariateSeries& b, const MesSpec& spec,
                              const ExpectileConfig& cfg = {});

enum class XmesVariant { laws, qb };

struct CompositeMesOptions {
    ExpectileConfig expectile;
    // Number of top order statistics for the Hill fit on y. Defaults to the
    // same k as the fit on x.
    std::optional<std::size_t> k_y;
};

/// Composite XMES estimator of QMES at level alpha: the expectile level is
/// tau_prime_hat(alpha) from a Hill fit on y, the extrapolation uses a Hill
/// fit on x. The returned level is the estimated expectile level.
RiskEstimate composite_xmes(const BivariateSeries& b, const Level& tau_n, const Level& alpha,
                            XmesVariant variant, const CompositeMesOptions& opts = {});

/// Weissman-type QMES estimator at level alpha (quantile threshold).
RiskEstimate qmes_weissman(const BivariateSeries& b, const Level& tau_n, const Level& alpha);

}  // namespace tailrisk
