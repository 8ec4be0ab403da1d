#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tailrisk/level.hpp"
#include "tailrisk/mes.hpp"
#include "tailrisk/rng.hpp"
#include "tailrisk/series.hpp"

namespace tailrisk {

// Univariate models a-d and bivariate models e-h. The y component of e, f,
// g, h follows a, b, c, d respectively.
//
//   a  AR(1)       Y' = 0.8 Y + e,               e ~ t_3
//   b  ARMA(1,1)   Y' = 0.95 Y + e' + 0.9 e,     e symmetric Pareto, shape 3
//   c  ARCH(1)     Y' = s' e',  s'^2 = 0.4 + 0.6 Y^2,            e ~ N(0,1)
//   d  GARCH(1,1)  Y' = s' e',  s'^2 = 0.1 + 0.4 Y^2 + 0.4 s^2,  e ~ N(0,1)
//   e  AR(1) pair,     t copula (rho 0.8, 3 dof), e_X = root_left_tail(Z), Z ~ t_3
//   f  ARMA(1,1) pair, Gumbel copula theta 2,     e_X = root_left_tail(Z), Z sym. Pareto
//   g  ARCH(1) pair,   t copula (rho 0.8, 3 dof), e_X with the half-uniform/half-exponential law
//   h  GARCH(1,1) pair, Gumbel copula theta 5,    e_X as in g
enum class ModelId { a, b, c, d, e, f, g, h };

std::optional<ModelId> parse_model(std::string_view name);
std::string_view to_string(ModelId id) noexcept;
bool is_bivariate(ModelId id) noexcept;

std::size_t default_burn_in(ModelId id) noexcept;

// Tail index of the y marginal (1/3 for the linear models with balanced
// 1/3-tailed innovations; 0.262 and 0.239 for the ARCH/GARCH models).
double model_tail_index_y(ModelId id) noexcept;

struct ModelSpec {
    ModelId id = ModelId::a;
    std::size_t n = 0;
    std::size_t burn_in = 0;
    std::uint64_t seed = 0;
    // Replication index; selects an independent generator stream.
    std::uint64_t stream = 0;
};

ModelSpec make_model_spec(ModelId id, std::size_t n, std::uint64_t seed,
                          std::uint64_t stream = 0);

// Recursions, one step per innovation. Initial states: zero level, and the
// unconditional variance for the GARCH volatility.
struct Ar1 {
    double phi = 0.8;
    double y = 0.0;
    double step(double eps) { return y = phi * y + eps; }
};

struct Arma11 {
    double phi = 0.95;
    double theta = 0.9;
    double y = 0.0;
    double eps_prev = 0.0;
    double step(double eps) {
        y = phi * y + eps + theta * eps_prev;
        eps_prev = eps;
        return y;
    }
};

struct Arch1 {
    double omega = 0.4;
    double alpha = 0.6;
    double y = 0.0;
    double step(double eps);
};

struct Garch11 {
    double omega = 0.1;
    double alpha = 0.4;
    double beta = 0.4;
    double y = 0.0;
    double sigma2 = 0.5;
    double step(double eps);
};

struct BivariatePath {
    std::vector<double> x;
    std::vector<double> y;
};

// Raw paths (burn-in discarded). The generator overloads let callers hand in
// a pre-positioned stream; the others use Xoshiro256::stream(seed, stream).
std::vector<double> simulate_univariate_path(const ModelSpec& spec, Xoshiro256& rng);
std::vector<double> simulate_univariate_path(const ModelSpec& spec);
BivariatePath simulate_bivariate_path(const ModelSpec& spec, Xoshiro256& rng);
BivariatePath simulate_bivariate_path(const ModelSpec& spec);

Series simulate_univariate(const ModelSpec& spec);
BivariateSeries simulate_bivariate(const ModelSpec& spec);

enum class TrueQuantity { expectile, qmes };

struct TrueValue {
    TrueQuantity quantity = TrueQuantity::expectile;
    Level level{0.5};
    double value = 0.0;
    std::size_t mc_points = 0;
    double mc_se = 0.0;
};

inline constexpr std::size_t kOracleMinPoints = 1'000'000;
inline constexpr std::size_t kOracleBatches = 20;

// Solves tau E(Y - theta)_+ = (1 - tau) E(theta - Y)_+ on the sample by
// bisection; mc_se from the spread of per-batch solutions over contiguous
// batches.
TrueValue expectile_oracle(std::span<const double> sample, const Level& tau,
                           std::size_t batches = kOracleBatches);

// Mean of x over {y > q}, q the empirical alpha-quantile of y; mc_se from
// contiguous batch means.
TrueValue qmes_oracle(std::span<const double> x, std::span<const double> y, const Level& alpha,
                      std::size_t batches = kOracleBatches);

// Long-run values on spec.n >= 10^6 simulated points (models a-d / e-h).
TrueValue true_expectile(const ModelSpec& spec, const Level& tau_prime);
TrueValue true_qmes(const ModelSpec& spec, const Level& alpha);

}  // namespace tailrisk
