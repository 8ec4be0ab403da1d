#include "tailrisk/distributions.hpp"

#include <cmath>
#include <numbers>

#include "tailrisk/error.hpp"

namespace tailrisk {

double standard_normal(Xoshiro256& rng) {
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double standard_exponential(Xoshiro256& rng) { return -std::log(rng.uniform()); }

double gamma_variate(Xoshiro256& rng, double shape) {
    if (!(shape > 0.0)) throw DataError("gamma shape must be positive");
    if (shape < 1.0) {
        // Boost to shape + 1 and scale back by U^{1/shape}.
        const double g = gamma_variate(rng, shape + 1.0);
        return g * std::pow(rng.uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = standard_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double chi_squared(Xoshiro256& rng, double dof) {
    // Small integer degrees of freedom: sum of squared normals.
    if (dof == std::floor(dof) && dof >= 1.0 && dof <= 4.0) {
        double acc = 0.0;
        for (int i = 0; i < static_cast<int>(dof); ++i) {
            const double z = standard_normal(rng);
            acc += z * z;
        }
        return acc;
    }
    return 2.0 * gamma_variate(rng, 0.5 * dof);
}

double student_t(Xoshiro256& rng, double dof) {
    const double z = standard_normal(rng);
    return z / std::sqrt(chi_squared(rng, dof) / dof);
}

double symmetric_pareto(Xoshiro256& rng, double shape) {
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    return sign * std::pow(rng.uniform(), -1.0 / shape);
}

double symmetric_pareto_quantile(double u, double shape) {
    if (u < 0.5) return -std::pow(2.0 * u, -1.0 / shape);
    return std::pow(2.0 * (1.0 - u), -1.0 / shape);
}

double half_uniform_half_exponential_quantile(double u) {
    if (u <= 0.5) return 2.0 * u - 1.0;
    return -std::log(2.0 * (1.0 - u));
}

double root_left_tail(double z) { return z > 0.0 ? z : -std::sqrt(-z); }

}  // namespace tailrisk
