#pragma once

#include "tailrisk/rng.hpp"

namespace tailrisk {

struct UniformPair {
    double u;
    double v;
};

/// Gumbel copula C(u,v) = exp(-[(-log u)^theta + (-log v)^theta]^{1/theta}),
/// theta >= 1, sampled as a frailty mixture: V positive (1/theta)-stable with
/// Laplace transform exp(-s^{1/theta}) (Chambers-Mallows-Stuck), then
/// U_i = exp(-(E_i / V)^{1/theta}) for independent unit exponentials E_i.
/// Upper tail dependence coefficient 2 - 2^{1/theta}.
class GumbelCopula {
public:
    explicit GumbelCopula(double theta);

    UniformPair sample(Xoshiro256& rng) const;
    double theta() const noexcept { return theta_; }

private:
    double theta_;
};

struct TPair {
    double first;
    double second;
};

/// Bivariate Student-t copula with correlation rho and dof degrees of freedom.
/// sample_t returns the underlying t vector (t_dof margins), sample its
/// probability-integral transform.
class StudentTCopula {
public:
    StudentTCopula(double rho, double dof);

    TPair sample_t(Xoshiro256& rng) const;
    UniformPair sample(Xoshiro256& rng) const;

    double rho() const noexcept { return rho_; }
    double dof() const noexcept { return dof_; }

private:
    double rho_;
    double dof_;
};

// Student-t cdf with dof degrees of freedom.
double student_t_cdf(double t, double dof);

}  // namespace tailrisk
