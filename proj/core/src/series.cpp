#include "tailrisk/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tailrisk/error.hpp"
#include "tailrisk/estimate.hpp"

namespace tailrisk {

Level::Level(double tau, LevelKind kind) : tail_(1.0 - tau), kind_(kind) {
    if (!(tau > 0.0 && tau < 1.0)) {
        throw DataError("level must lie in (0,1), got " + std::to_string(tau));
    }
}

Level::Level(double tail, LevelKind kind, int) : tail_(tail), kind_(kind) {}

Level Level::from_tail(double p, LevelKind kind) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DataError("tail probability must lie in (0,1), got " + std::to_string(p));
    }
    return Level(p, kind, 0);
}

Level Level::from_count(std::size_t k, std::size_t n) {
    if (n == 0 || k == 0 || k >= n) {
        throw DataError("need 1 <= k <= n-1, got k=" + std::to_string(k) +
                        " n=" + std::to_string(n));
    }
    return from_tail(static_cast<double>(k) / static_cast<double>(n));
}

std::size_t tail_count(std::size_t n, const Level& level) {
    const double x = static_cast<double>(n) * level.tail();
    const double nearest = std::nearbyint(x);
    if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, x)) {
        return static_cast<std::size_t>(nearest);
    }
    return static_cast<std::size_t>(std::floor(x));
}

Series::Series(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw DataError("series contains a non-finite value");
        }
    }
    sorted_ = values_;
    std::sort(sorted_.begin(), sorted_.end());
}

double Series::order_stat(std::size_t i) const {
    if (i < 1 || i > sorted_.size()) {
        throw DataError("order statistic index " + std::to_string(i) + " outside 1.." +
                        std::to_string(sorted_.size()));
    }
    return sorted_[i - 1];
}

double Series::min() const {
    if (empty()) throw DataError("empty series");
    return sorted_.front();
}

double Series::max() const {
    if (empty()) throw DataError("empty series");
    return sorted_.back();
}

double empirical_quantile(const Series& s, const Level& tau) {
    const std::size_t n = s.size();
    if (n == 0) throw DataError("empirical quantile of an empty series");
    const std::size_t above = tail_count(n, tau);
    if (above >= n) throw DataError("tau too small for sample size");
    return s.order_stat(n - above);
}

double empirical_survival(const Series& s, double u) {
    if (s.empty()) return 0.0;
    const auto sorted = s.sorted();
    const auto first_above = std::upper_bound(sorted.begin(), sorted.end(), u);
    return static_cast<double>(sorted.end() - first_above) / static_cast<double>(s.size());
}

std::vector<double> ranks_to_uniform(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> out(n);
    const double inv_n = 1.0 / static_cast<double>(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        // positions i..j (0-based) share ranks i+1..j+1
        const double avg_rank = 0.5 * static_cast<double>(i + j + 2);
        for (std::size_t m = i; m <= j; ++m) out[order[m]] = avg_rank * inv_n;
        i = j + 1;
    }
    return out;
}

std::vector<double> ranks_to_uniform(const Series& s) { return ranks_to_uniform(s.values()); }

std::string_view to_string(TailMethod m) noexcept {
    switch (m) {
        case TailMethod::hill: return "hill";
        case TailMethod::expectile_based: return "expectile_based";
    }
    return "?";
}

std::string_view to_string(CiVariant v) noexcept {
    switch (v) {
        case CiVariant::iid: return "iid";
        case CiVariant::d: return "d";
        case CiVariant::d_adj: return "d-adj";
    }
    return "?";
}

std::string_view to_string(EstimateKind k) noexcept {
    switch (k) {
        case EstimateKind::expectile: return "expectile";
        case EstimateKind::quantile: return "quantile";
        case EstimateKind::qmes: return "qmes";
        case EstimateKind::xmes: return "xmes";
    }
    return "?";
}

}  // namespace tailrisk
