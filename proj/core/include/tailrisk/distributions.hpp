#pragma once

#include "tailrisk/rng.hpp"

namespace tailrisk {

// Samplers written against Xoshiro256 directly so that a seed reproduces the
// same path on every standard library.

double standard_normal(Xoshiro256& rng);
double standard_exponential(Xoshiro256& rng);
// Marsaglia-Tsang; shape > 0.
double gamma_variate(Xoshiro256& rng, double shape);
double chi_squared(Xoshiro256& rng, double dof);
double student_t(Xoshiro256& rng, double dof);

// S * V with S = +-1 equiprobable and P(V > v) = v^{-shape}, v >= 1.
double symmetric_pareto(Xoshiro256& rng, double shape);
double symmetric_pareto_quantile(double u, double shape);

// Density 0.5 on (-1, 0] and 0.5 e^{-z} on z > 0.
double half_uniform_half_exponential_quantile(double u);

// Z for Z > 0 and -(-Z)^{1/2} for Z < 0: keeps the right tail, lightens the left.
double root_left_tail(double z);

}  // namespace tailrisk
