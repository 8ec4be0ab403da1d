#pragma once

#include <cstddef>
#include <span>

#include "tailrisk/estimate.hpp"
#include "tailrisk/series.hpp"

namespace tailrisk {

struct ExpectileConfig {
    std::size_t max_iter = 100;
    double tol = 1e-10;
};

/// Sample tau-expectile, the minimiser of sum_t |tau - 1{Y_t <= theta}| (Y_t - theta)^2.
///
/// Computed by iteratively reweighted least squares started at the sample
/// mean: theta <- sum w_t Y_t / sum w_t with w_t = |1{Y_t <= theta} - tau|.
/// Each update only depends on how the sample splits around theta, so the
/// iteration reaches an exact fixed point once the split stabilises.
///
/// Throws ConvergenceError (carrying the last iterate and its residual) if the
/// relative change is still above cfg.tol after cfg.max_iter updates, or if
/// the first-order residual at the fixed point exceeds 10 * cfg.tol.
double laws_expectile(const Series& s, const Level& tau, const ExpectileConfig& cfg = {});

/// |tau sum (Y - theta)_+ - (1 - tau) sum (theta - Y)_+| / sum |Y - theta|.
/// Zero for a constant sample evaluated at its value.
double expectile_foc_residual(std::span<const double> values, double tau, double theta);

/// Quantile-based expectile (1/gamma - 1)^{-gamma} q_tau. Requires 0 < gamma < 1.
double qb_expectile(const Series& s, const Level& tau, const TailFit& gamma);

struct ExtrapolationSpec {
    Level tau_n;
    Level tau_prime;
    TailFit gamma;
};

/// ((1 - tau') / (1 - tau_n))^{-gamma} * base, for any positive base.
double extrapolate(double base, const ExtrapolationSpec& spec);

/// Weissman quantile ((1 - alpha) / (1 - tau_n))^{-gamma} Y_{n - floor(n(1-tau_n)), n}.
double weissman_quantile(const Series& s, const Level& tau_n, const Level& alpha,
                         const TailFit& gamma);

/// Expectile level matching the alpha-quantile: 1 - (1 - alpha) gamma / (1 - gamma).
Level tau_prime_hat(const Level& alpha, const TailFit& gamma);

/// Composite LAWS estimator of q_alpha: the LAWS expectile at tau_n, Hill at
/// the same tau_n, extrapolated to tau_prime_hat(alpha). The returned level
/// is tau_prime_hat(alpha).
RiskEstimate composite_laws(const Series& s, const Level& tau_n, const Level& alpha,
                            const ExpectileConfig& cfg = {});

/// Same quantity written as (1/gamma - 1)^gamma times the LAWS estimator
/// extrapolated straight to alpha.
double composite_laws_via_alpha(const Series& s, const Level& tau_n, const Level& alpha,
                                const ExpectileConfig& cfg = {});

/// Composite quantile-based estimator of q_alpha.
RiskEstimate composite_qb(const Series& s, const Level& tau_n, const Level& alpha);

}  // namespace tailrisk
