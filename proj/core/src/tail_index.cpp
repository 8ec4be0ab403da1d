#include "tailrisk/tail_index.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tailrisk/error.hpp"

namespace tailrisk {

namespace {

void check_tail_size(const Series& s, std::size_t k) {
    if (k < 1 || k + 1 > s.size()) {
        throw DataError("k must satisfy 1 <= k <= n-1 (k=" + std::to_string(k) +
                        ", n=" + std::to_string(s.size()) + ")");
    }
}

// log(Y_{n-i+1,n}) - log(Y_{n-k,n}) for i = 1..k, largest first.
std::vector<double> log_excesses(const Series& s, std::size_t k) {
    const auto sorted = s.sorted();
    const std::size_t n = sorted.size();
    const double threshold = sorted[n - k - 1];
    if (!(threshold > 0.0)) {
        throw DataError("Hill requires positive upper order statistics");
    }
    const double log_threshold = std::log(threshold);
    std::vector<double> out(k);
    for (std::size_t i = 1; i <= k; ++i) out[i - 1] = std::log(sorted[n - i]) - log_threshold;
    return out;
}

}  // namespace

TailFit hill(const Series& s, std::size_t k) {
    check_tail_size(s, k);
    const auto excess = log_excesses(s, k);
    double sum = 0.0;
    for (double e : excess) sum += e;

    TailFit fit;
    fit.gamma = sum / static_cast<double>(k);
    fit.method = TailMethod::hill;
    fit.k = k;
    fit.tau_n = Level::from_count(k, s.size());
    return fit;
}

TailFit gamma_expectile_based(const Series& s, const Level& tau_n, double xi_tilde) {
    if (s.empty()) throw DataError("expectile-based estimator on an empty series");
    const double survival = empirical_survival(s, xi_tilde);

    TailFit fit;
    fit.method = TailMethod::expectile_based;
    fit.k = tail_count(s.size(), tau_n);
    fit.tau_n = tau_n;
    fit.gamma = 1.0 / (1.0 + survival / tau_n.tail());
    fit.degenerate = (survival == 0.0);
    return fit;
}

SecondOrderFit second_order(const Series& s, std::size_t k) {
    if (k < kMinSecondOrderTail) {
        throw DataError("insufficient tail sample for second-order estimation (k=" +
                        std::to_string(k) + ")");
    }
    check_tail_size(s, k);
    const auto excess = log_excesses(s, k);
    const double kd = static_cast<double>(k);

    double m1 = 0.0, m2 = 0.0, m3 = 0.0;
    for (double e : excess) {
        m1 += e;
        m2 += e * e;
        m3 += e * e * e;
    }
    m1 /= kd;
    m2 /= kd;
    m3 /= kd;
    if (!(m1 > 0.0 && m2 > 0.0 && m3 > 0.0)) {
        throw NumericalError("second-order estimation needs distinct upper order statistics");
    }

    const double half_log_m2 = 0.5 * std::log(m2 / 2.0);
    const double t_stat =
        (std::log(m1) - half_log_m2) / (half_log_m2 - std::log(m3 / 6.0) / 3.0);
    double rho = -std::abs(3.0 * (t_stat - 1.0) / (t_stat - 3.0));
    if (std::isnan(rho)) {
        throw NumericalError("second-order statistic is undefined on this sample");
    }
    rho = std::clamp(rho, kRhoMin, kRhoMax);

    // Scaled log-spacings U_i = i (log Y_{n-i+1} - log Y_{n-i}); excess[i-1]
    // holds log Y_{n-i+1} - log Y_{n-k}, and excess[k] would be 0.
    auto weighted_mean = [&](double a, bool with_spacings) {
        double acc = 0.0;
        for (std::size_t i = 1; i <= k; ++i) {
            const double w = std::pow(static_cast<double>(i) / kd, -a);
            if (with_spacings) {
                const double next = (i < k) ? excess[i] : 0.0;
                acc += w * static_cast<double>(i) * (excess[i - 1] - next);
            } else {
                acc += w;
            }
        }
        return acc / kd;
    };
    const double d_rho = weighted_mean(rho, false);
    const double big_d0 = weighted_mean(0.0, true);
    const double big_drho = weighted_mean(rho, true);
    const double big_d2rho = weighted_mean(2.0 * rho, true);

    const double denom = d_rho * big_drho - big_d2rho;
    if (denom == 0.0 || !std::isfinite(denom)) {
        throw NumericalError("second-order scale estimate is undefined on this sample");
    }
    const double ratio = kd / static_cast<double>(s.size());
    const double beta = std::pow(ratio, rho) * (d_rho * big_d0 - big_drho) / denom;

    return SecondOrderFit{rho, beta, k};
}

std::size_t default_second_order_k(const Series& s) {
    const std::size_t n = s.size();
    const auto sorted = s.sorted();
    const auto first_positive = std::upper_bound(sorted.begin(), sorted.end(), 0.0);
    const auto positives = static_cast<std::size_t>(sorted.end() - first_positive);
    const auto by_size =
        static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), 0.999)));
    std::size_t k = std::min(by_size, n > 0 ? n - 1 : 0);
    if (positives >= 1) k = std::min(k, positives - 1);
    else k = 0;
    return k;
}

double bias_term(const TailFit& fit, const SecondOrderFit& so) {
    if (fit.method != TailMethod::hill) {
        throw DataError("bias term is defined for Hill fits only");
    }
    return fit.gamma * so.beta * std::pow(fit.tau_n.tail(), -so.rho) / (1.0 - so.rho);
}

}  // namespace tailrisk
