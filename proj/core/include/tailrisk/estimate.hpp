#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "tailrisk/level.hpp"

namespace tailrisk {

enum class TailMethod { hill, expectile_based };

struct TailFit {
    double gamma = 0.0;
    TailMethod method = TailMethod::hill;
    std::size_t k = 0;
    Level tau_n{0.5};
    // Set when the estimate sits on a boundary value instead of coming from
    // the data (expectile-based estimator with no exceedances).
    bool degenerate = false;
};

enum class CiVariant { iid, d, d_adj };

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95;
    CiVariant variant = CiVariant::d;
    double w_hat = 0.0;
};

enum class EstimateKind { expectile, quantile, qmes, xmes };

struct RiskEstimate {
    double value = 0.0;
    Level level{0.5};
    EstimateKind kind = EstimateKind::expectile;
    std::optional<ConfidenceInterval> ci;
};

std::string_view to_string(TailMethod m) noexcept;
std::string_view to_string(CiVariant v) noexcept;
std::string_view to_string(EstimateKind k) noexcept;

}  // namespace tailrisk
