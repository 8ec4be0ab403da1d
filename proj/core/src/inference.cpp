#include "tailrisk/inference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tailrisk/error.hpp"
#include "tailrisk/normal.hpp"

namespace tailrisk {

BlockScheme BlockScheme::make(std::size_t n, std::size_t big, std::size_t small) {
    if (big == 0) throw DataError("big-block length must be positive");
    BlockScheme scheme;
    scheme.big = big;
    scheme.small = small;
    scheme.count = n / (big + small);
    if (scheme.count < 2) throw DataError("sample too short for block scheme");
    return scheme;
}

namespace {

// Autocorrelation of `values` at one lag, given the centred copy and its sum of squares.
double acf_at(std::span<const double> centred, double denom, std::size_t lag) {
    double acc = 0.0;
    for (std::size_t t = 0; t + lag < centred.size(); ++t) acc += centred[t] * centred[t + lag];
    return denom > 0.0 ? acc / denom : 0.0;
}

std::vector<double> centre(std::span<const double> values, double& sum_sq) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    std::vector<double> out(values.size());
    sum_sq = 0.0;
    for (std::size_t t = 0; t < values.size(); ++t) {
        out[t] = values[t] - mean;
        sum_sq += out[t] * out[t];
    }
    return out;
}

}  // namespace

std::vector<double> sample_autocorrelation(std::span<const double> values, std::size_t max_lag) {
    if (values.empty()) return {};
    double sum_sq = 0.0;
    const auto centred = centre(values, sum_sq);
    std::vector<double> out;
    out.reserve(max_lag);
    for (std::size_t h = 1; h <= max_lag; ++h) {
        out.push_back(h < values.size() ? acf_at(centred, sum_sq, h) : 0.0);
    }
    return out;
}

std::optional<std::size_t> decorrelation_lag(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 4) return std::nullopt;

    std::vector<double> squares(n);
    std::transform(values.begin(), values.end(), squares.begin(),
                   [](double v) { return v * v; });
    double ss_level = 0.0, ss_square = 0.0;
    const auto level = centre(values, ss_level);
    const auto square = centre(squares, ss_square);

    for (std::size_t h = 1; h <= n / 4; ++h) {
        const double a = std::abs(acf_at(level, ss_level, h));
        const double b = std::abs(acf_at(square, ss_square, h));
        if (std::max(a, b) < kAcfCutoff) return h;
    }
    return std::nullopt;
}

BlockScheme default_blocks(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 100) throw DataError("default block scheme needs n >= 100");
    const double log_n = std::log(static_cast<double>(n));
    const auto big = static_cast<std::size_t>(std::floor(log_n * log_n));

    const auto lag = decorrelation_lag(values);
    if (!lag) {
        BlockScheme scheme = BlockScheme::make(n, big, n / 10);
        scheme.fallback = true;
        return scheme;
    }
    std::size_t small = 0;
    for (std::size_t c = 1;; ++c) {
        small = static_cast<std::size_t>(std::floor(static_cast<double>(c) * log_n));
        if (small >= *lag) break;
    }
    return BlockScheme::make(n, big, small);
}

BlockScheme default_blocks(const Series& s) { return default_blocks(s.values()); }

BlockScheme default_blocks(const BivariateSeries& b) { return default_blocks(b.x().values()); }

double block_variance(const Series& s, const Level& tau_n, const BlockScheme& blocks,
                      const TailFit& gamma) {
    if (blocks.count < 2) throw DataError("sample too short for block scheme");
    const std::size_t stride = blocks.big + blocks.small;
    if (blocks.big == 0 || (blocks.count - 1) * stride + blocks.big > s.size()) {
        throw DataError("block scheme does not fit the sample");
    }

    const auto u = ranks_to_uniform(s);
    // u takes values rank/n; ranks at the tau_n boundary differ from tau_n by
    // rounding only, real exceedances by at least 1/(2n).
    const double cut = tau_n.tau() + 1e-12;

    std::vector<double> z(blocks.count, 0.0);
    for (std::size_t j = 0; j < blocks.count; ++j) {
        const std::size_t start = j * stride;
        std::size_t count = 0;
        for (std::size_t t = start; t < start + blocks.big; ++t) {
            if (u[t] > cut) ++count;
        }
        z[j] = static_cast<double>(count);
    }

    double mean = 0.0;
    for (double v : z) mean += v;
    mean /= static_cast<double>(z.size());
    double ss = 0.0;
    for (double v : z) ss += (v - mean) * (v - mean);
    const double variance = ss / static_cast<double>(z.size() - 1);

    return gamma.gamma * gamma.gamma * variance /
           (static_cast<double>(blocks.big) * tau_n.tail());
}

ConfidenceInterval ci_extreme(const RiskEstimate& point, const Level& tau_n,
                              const Level& tau_prime, const TailFit& gamma, double w_hat,
                              double b_hat, double level, CiVariant variant) {
    if (!(point.value > 0.0)) throw DataError("interval needs a positive point estimate");
    if (!(level > 0.0 && level < 1.0)) throw DataError("confidence level must lie in (0,1)");
    if (gamma.k < 1) throw DataError("interval needs k >= 1");

    double w = w_hat;
    double b = b_hat;
    switch (variant) {
        case CiVariant::iid:
            w = gamma.gamma * gamma.gamma;
            b = 0.0;
            break;
        case CiVariant::d:
            b = 0.0;
            break;
        case CiVariant::d_adj:
            break;
    }
    if (!(w >= 0.0)) throw DataError("variance estimate must be nonnegative");

    const double z = normal_quantile(0.5 * (1.0 + level));
    const double half_width = z * std::sqrt(w / static_cast<double>(gamma.k));
    const double log_ratio = std::log(tau_n.tail() / tau_prime.tail());

    const double a = point.value * std::exp(log_ratio * (-b - half_width));
    const double c = point.value * std::exp(log_ratio * (-b + half_width));

    ConfidenceInterval ci;
    ci.lower = std::min(a, c);
    ci.upper = std::max(a, c);
    ci.level = level;
    ci.variant = variant;
    ci.w_hat = w;
    return ci;
}

ConfidenceInterval ci_series(const RiskEstimate& point, const Series& s, const Level& tau_n,
                             const BlockScheme& blocks, double level, CiVariant variant,
                             const std::optional<SecondOrderFit>& second_order_override) {
    const TailFit gamma = hill(s, tail_count(s.size(), tau_n));
    double w = gamma.gamma * gamma.gamma;
    double b = 0.0;
    if (variant != CiVariant::iid) w = block_variance(s, tau_n, blocks, gamma);
    if (variant == CiVariant::d_adj) {
        const SecondOrderFit so = second_order_override
                                      ? *second_order_override
                                      : second_order(s, default_second_order_k(s));
        b = bias_term(gamma, so);
    }
    return ci_extreme(point, tau_n, point.level, gamma, w, b, level, variant);
}

ConfidenceInterval ci_xmes(const RiskEstimate& point, const BivariateSeries& b,
                           const Level& tau_n, const BlockScheme& blocks, double level,
                           CiVariant variant,
                           const std::optional<SecondOrderFit>& second_order_override) {
    return ci_series(point, b.x(), tau_n, blocks, level, variant, second_order_override);
}

}  // namespace tailrisk
