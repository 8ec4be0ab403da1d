#include "tailrisk/copula.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/distributions/students_t.hpp>

#include "tailrisk/distributions.hpp"
#include "tailrisk/error.hpp"

namespace tailrisk {

namespace {

constexpr double kUniformFloor = 0x1.0p-60;
constexpr double kUniformCeil = 1.0 - 0x1.0p-53;

double clamp_open(double u) { return std::clamp(u, kUniformFloor, kUniformCeil); }

}  // namespace

GumbelCopula::GumbelCopula(double theta) : theta_(theta) {
    if (!(theta >= 1.0)) throw DataError("Gumbel copula needs theta >= 1");
}

UniformPair GumbelCopula::sample(Xoshiro256& rng) const {
    const double alpha = 1.0 / theta_;
    double frailty = 1.0;
    if (alpha < 1.0) {
        const double angle = std::numbers::pi * rng.uniform();
        const double w = standard_exponential(rng);
        frailty = std::sin(alpha * angle) / std::pow(std::sin(angle), 1.0 / alpha) *
                  std::pow(std::sin((1.0 - alpha) * angle) / w, (1.0 - alpha) / alpha);
    }
    const double e1 = standard_exponential(rng);
    const double e2 = standard_exponential(rng);
    return {clamp_open(std::exp(-std::pow(e1 / frailty, alpha))),
            clamp_open(std::exp(-std::pow(e2 / frailty, alpha)))};
}

StudentTCopula::StudentTCopula(double rho, double dof) : rho_(rho), dof_(dof) {
    if (!(rho > -1.0 && rho < 1.0)) throw DataError("t copula correlation must lie in (-1,1)");
    if (!(dof > 0.0)) throw DataError("t copula degrees of freedom must be positive");
}

TPair StudentTCopula::sample_t(Xoshiro256& rng) const {
    const double z1 = standard_normal(rng);
    const double z2 = rho_ * z1 + std::sqrt(1.0 - rho_ * rho_) * standard_normal(rng);
    const double scale = std::sqrt(chi_squared(rng, dof_) / dof_);
    return {z1 / scale, z2 / scale};
}

UniformPair StudentTCopula::sample(Xoshiro256& rng) const {
    const TPair t = sample_t(rng);
    return {clamp_open(student_t_cdf(t.first, dof_)), clamp_open(student_t_cdf(t.second, dof_))};
}

double student_t_cdf(double t, double dof) {
    return boost::math::cdf(boost::math::students_t_distribution<double>(dof), t);
}

}  // namespace tailrisk
