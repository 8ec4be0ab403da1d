#pragma once

namespace tailrisk {

double normal_cdf(double x);

// Standard normal quantile z_p for 0 < p < 1. Rational approximation refined
// by one Halley step; absolute error well below 1e-9 over (1e-300, 1 - 1e-16).
double normal_quantile(double p);

}  // namespace tailrisk
