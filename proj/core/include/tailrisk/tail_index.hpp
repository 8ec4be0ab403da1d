#pragma once

#include <cstddef>

#include "tailrisk/estimate.hpp"
#include "tailrisk/series.hpp"

namespace tailrisk {

/// Hill estimator on the top k order statistics:
///   gamma = k^{-1} sum_{i=1..k} log(Y_{n-i+1,n} / Y_{n-k,n}).
/// Requires 1 <= k <= n-1 and a positive threshold Y_{n-k,n}.
TailFit hill(const Series& s, std::size_t k);

/// Expectile-based estimator (1 + Fbar_n(xi) / (1 - tau_n))^{-1}, where xi is
/// the LAWS expectile at tau_n. Returns gamma = 1 flagged degenerate when no
/// observation exceeds xi.
TailFit gamma_expectile_based(const Series& s, const Level& tau_n, double xi_tilde);

/// Second-order parameters (rho, beta) of the tail, with the auxiliary
/// function parametrised as A(t) = gamma * beta * t^rho.
struct SecondOrderFit {
    double rho = -1.0;
    double beta = 0.0;
    std::size_t k_used = 0;
};

inline constexpr std::size_t kMinSecondOrderTail = 50;
inline constexpr double kRhoMin = -10.0;
inline constexpr double kRhoMax = -0.01;

/// Moment-ratio estimator of rho (tuning parameter 0, i.e. the log form of
/// the statistic built from the first three log-excess moments) and the
/// matching scaled-log-spacings estimator of beta, both on the top k
/// observations. rho is clamped to [-10, -0.01].
///
///   M_j   = k^{-1} sum_{i=1..k} (log Y_{n-i+1,n} - log Y_{n-k,n})^j
///   T     = (log M_1 - log(M_2/2)/2) / (log(M_2/2)/2 - log(M_3/6)/3)
///   rho   = -|3 (T - 1) / (T - 3)|
///   U_i   = i (log Y_{n-i+1,n} - log Y_{n-i,n})
///   d(a)  = k^{-1} sum (i/k)^{-a},   D(a) = k^{-1} sum (i/k)^{-a} U_i
///   beta  = (k/n)^rho (d(rho) D(0) - D(rho)) / (d(rho) D(rho) - D(2 rho))
///
/// Throws DataError when k < 50 or the top k+1 values are not all positive.
SecondOrderFit second_order(const Series& s, std::size_t k);

/// The k at which pipelines fit the second-order parameters: floor(n^0.999),
/// capped so that the threshold stays among the positive observations.
std::size_t default_second_order_k(const Series& s);

/// b = gamma * beta * (1 - tau_n)^{-rho} / (1 - rho), the asymptotic bias of
/// the log extrapolation factor. Requires a Hill fit.
double bias_term(const TailFit& fit, const SecondOrderFit& so);

}  // namespace tailrisk
