#include "tailrisk/expectile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "tailrisk/error.hpp"
#include "tailrisk/tail_index.hpp"

namespace tailrisk {

double expectile_foc_residual(std::span<const double> values, double tau, double theta) {
    long double above = 0.0L, below = 0.0L;
    for (double y : values) {
        if (y > theta) above += static_cast<long double>(y) - theta;
        else below += static_cast<long double>(theta) - y;
    }
    const long double total = above + below;
    if (total == 0.0L) return 0.0;
    const long double gap = static_cast<long double>(tau) * above - (1.0L - tau) * below;
    return static_cast<double>(std::abs(gap) / total);
}

double laws_expectile(const Series& s, const Level& level, const ExpectileConfig& cfg) {
    const std::size_t n = s.size();
    if (n < 2) throw DataError("expectile estimation needs at least 2 observations");
    if (cfg.max_iter < 1 || !(cfg.tol > 0.0)) {
        throw DataError("expectile config needs max_iter >= 1 and tol > 0");
    }
    const double tau = level.tau();
    const auto sorted = s.sorted();

    std::vector<long double> prefix(n + 1, 0.0L);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + sorted[i];
    const long double total = prefix[n];

    auto update = [&](double theta) {
        const auto low = static_cast<std::size_t>(
            std::upper_bound(sorted.begin(), sorted.end(), theta) - sorted.begin());
        const long double w_low = 1.0L - tau;
        const long double w_high = tau;
        const long double num = w_low * prefix[low] + w_high * (total - prefix[low]);
        const long double den = w_low * static_cast<long double>(low) +
                                w_high * static_cast<long double>(n - low);
        return static_cast<double>(num / den);
    };

    double theta = static_cast<double>(total / static_cast<long double>(n));
    bool converged = false;
    for (std::size_t iter = 0; iter < cfg.max_iter; ++iter) {
        const double next = update(theta);
        const double scale = std::max(std::abs(next), std::numeric_limits<double>::min());
        const bool small_step = std::abs(next - theta) <= cfg.tol * scale;
        theta = next;
        if (small_step) {
            converged = true;
            break;
        }
    }

    const double residual = expectile_foc_residual(s.values(), tau, theta);
    if (!converged) {
        throw ConvergenceError("LAWS expectile did not converge within " +
                                   std::to_string(cfg.max_iter) + " iterations",
                               theta, residual);
    }
    if (residual > 10.0 * cfg.tol) {
        throw ConvergenceError("LAWS expectile first-order residual " + std::to_string(residual) +
                                   " above tolerance",
                               theta, residual);
    }
    return theta;
}

double qb_expectile(const Series& s, const Level& tau, const TailFit& gamma) {
    const double g = gamma.gamma;
    if (!(g > 0.0 && g < 1.0)) {
        throw NumericalError("proportionality constant undefined (gamma=" + std::to_string(g) +
                             ")");
    }
    return std::pow(1.0 / g - 1.0, -g) * empirical_quantile(s, tau);
}

double extrapolate(double base, const ExtrapolationSpec& spec) {
    if (!(base > 0.0) || !std::isfinite(base)) {
        throw DataError("extrapolation base must be positive and finite, got " +
                        std::to_string(base));
    }
    if (spec.tau_prime < spec.tau_n) {
        throw DataError("extreme level lies below the intermediate level");
    }
    return std::pow(spec.tau_prime.tail() / spec.tau_n.tail(), -spec.gamma.gamma) * base;
}

double weissman_quantile(const Series& s, const Level& tau_n, const Level& alpha,
                         const TailFit& gamma) {
    if (alpha < tau_n) throw DataError("weissman level alpha lies below tau_n");
    const double q = empirical_quantile(s, tau_n);
    return std::pow(alpha.tail() / tau_n.tail(), -gamma.gamma) * q;
}

Level tau_prime_hat(const Level& alpha, const TailFit& gamma) {
    const double g = gamma.gamma;
    const double tail = alpha.tail() * (g / (1.0 - g));
    if (!(g > 0.0 && g < 1.0) || !(tail > 0.0 && tail < 1.0)) {
        throw NumericalError("gamma too large for composite level (gamma=" + std::to_string(g) +
                             ")");
    }
    return Level::from_tail(tail, LevelKind::extreme);
}

namespace {

TailFit hill_at(const Series& s, const Level& tau_n) {
    return hill(s, tail_count(s.size(), tau_n));
}

}  // namespace

RiskEstimate composite_laws(const Series& s, const Level& tau_n, const Level& alpha,
                            const ExpectileConfig& cfg) {
    if (!(tau_n < alpha)) throw DataError("composite estimation needs alpha > tau_n");
    const TailFit gamma = hill_at(s, tau_n);
    const Level tau_prime = tau_prime_hat(alpha, gamma);
    const double base = laws_expectile(s, tau_n, cfg);

    RiskEstimate out;
    out.value = extrapolate(base, {tau_n, tau_prime, gamma});
    out.level = tau_prime;
    out.kind = EstimateKind::expectile;
    return out;
}

double composite_laws_via_alpha(const Series& s, const Level& tau_n, const Level& alpha,
                                const ExpectileConfig& cfg) {
    if (!(tau_n < alpha)) throw DataError("composite estimation needs alpha > tau_n");
    const TailFit gamma = hill_at(s, tau_n);
    if (!(gamma.gamma > 0.0 && gamma.gamma < 1.0)) {
        throw NumericalError("gamma too large for composite level");
    }
    const double base = laws_expectile(s, tau_n, cfg);
    const double at_alpha = extrapolate(base, {tau_n, alpha, gamma});
    return std::pow(1.0 / gamma.gamma - 1.0, gamma.gamma) * at_alpha;
}

RiskEstimate composite_qb(const Series& s, const Level& tau_n, const Level& alpha) {
    if (!(tau_n < alpha)) throw DataError("composite estimation needs alpha > tau_n");
    const TailFit gamma = hill_at(s, tau_n);
    const Level tau_prime = tau_prime_hat(alpha, gamma);
    const double base = qb_expectile(s, tau_n, gamma);

    RiskEstimate out;
    out.value = extrapolate(base, {tau_n, tau_prime, gamma});
    out.level = tau_prime;
    out.kind = EstimateKind::expectile;
    return out;
}

}  // namespace tailrisk
