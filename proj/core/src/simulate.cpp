#include "tailrisk/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tailrisk/copula.hpp"
#include "tailrisk/distributions.hpp"
#include "tailrisk/error.hpp"
#include "tailrisk/normal.hpp"

namespace tailrisk {

std::optional<ModelId> parse_model(std::string_view name) {
    if (name.size() != 1) return std::nullopt;
    if (name[0] < 'a' || name[0] > 'h') return std::nullopt;
    return static_cast<ModelId>(name[0] - 'a');
}

std::string_view to_string(ModelId id) noexcept {
    static constexpr std::string_view names[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
    return names[static_cast<int>(id)];
}

bool is_bivariate(ModelId id) noexcept { return static_cast<int>(id) >= 4; }

namespace {

ModelId y_model(ModelId id) {
    return is_bivariate(id) ? static_cast<ModelId>(static_cast<int>(id) - 4) : id;
}

}  // namespace

std::size_t default_burn_in(ModelId id) noexcept {
    return y_model(id) == ModelId::b ? 2000 : 1000;
}

double model_tail_index_y(ModelId id) noexcept {
    switch (y_model(id)) {
        case ModelId::a:
        case ModelId::b: return 1.0 / 3.0;
        case ModelId::c: return 0.262;
        case ModelId::d: return 0.239;
        default: return 0.0;
    }
}

ModelSpec make_model_spec(ModelId id, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
    return ModelSpec{id, n, default_burn_in(id), seed, stream};
}

double Arch1::step(double eps) { return y = std::sqrt(omega + alpha * y * y) * eps; }

double Garch11::step(double eps) {
    sigma2 = omega + alpha * y * y + beta * sigma2;
    return y = std::sqrt(sigma2) * eps;
}

namespace {

template <class Model, class Draw>
std::vector<double> run_univariate(Model model, Draw draw, const ModelSpec& spec) {
    for (std::size_t t = 0; t < spec.burn_in; ++t) model.step(draw());
    std::vector<double> out;
    out.reserve(spec.n);
    for (std::size_t t = 0; t < spec.n; ++t) out.push_back(model.step(draw()));
    return out;
}

// `draw` returns the innovation pair {e_X, e_Y}.
template <class Model, class Draw>
BivariatePath run_bivariate(Model mx, Model my, Draw draw, const ModelSpec& spec) {
    for (std::size_t t = 0; t < spec.burn_in; ++t) {
        const auto [ex, ey] = draw();
        mx.step(ex);
        my.step(ey);
    }
    BivariatePath out;
    out.x.reserve(spec.n);
    out.y.reserve(spec.n);
    for (std::size_t t = 0; t < spec.n; ++t) {
        const auto [ex, ey] = draw();
        out.x.push_back(mx.step(ex));
        out.y.push_back(my.step(ey));
    }
    return out;
}

struct InnovationPair {
    double x;
    double y;
};

}  // namespace

std::vector<double> simulate_univariate_path(const ModelSpec& spec, Xoshiro256& rng) {
    switch (spec.id) {
        case ModelId::a:
            return run_univariate(Ar1{}, [&] { return student_t(rng, 3.0); }, spec);
        case ModelId::b:
            return run_univariate(Arma11{}, [&] { return symmetric_pareto(rng, 3.0); }, spec);
        case ModelId::c:
            return run_univariate(Arch1{}, [&] { return standard_normal(rng); }, spec);
        case ModelId::d:
            return run_univariate(Garch11{}, [&] { return standard_normal(rng); }, spec);
        default:
            throw DataError("model " + std::string(to_string(spec.id)) + " is bivariate");
    }
}

std::vector<double> simulate_univariate_path(const ModelSpec& spec) {
    Xoshiro256 rng = Xoshiro256::stream(spec.seed, spec.stream);
    return simulate_univariate_path(spec, rng);
}

BivariatePath simulate_bivariate_path(const ModelSpec& spec, Xoshiro256& rng) {
    const StudentTCopula t_copula(0.8, 3.0);
    switch (spec.id) {
        case ModelId::e: {
            auto draw = [&] {
                const TPair t = t_copula.sample_t(rng);
                return InnovationPair{root_left_tail(t.first), t.second};
            };
            return run_bivariate(Ar1{}, Ar1{}, draw, spec);
        }
        case ModelId::f: {
            const GumbelCopula copula(2.0);
            auto draw = [&] {
                const UniformPair uv = copula.sample(rng);
                return InnovationPair{root_left_tail(symmetric_pareto_quantile(uv.u, 3.0)),
                                      symmetric_pareto_quantile(uv.v, 3.0)};
            };
            return run_bivariate(Arma11{}, Arma11{}, draw, spec);
        }
        case ModelId::g: {
            auto draw = [&] {
                const UniformPair uv = t_copula.sample(rng);
                return InnovationPair{half_uniform_half_exponential_quantile(uv.u),
                                      normal_quantile(uv.v)};
            };
            return run_bivariate(Arch1{}, Arch1{}, draw, spec);
        }
        case ModelId::h: {
            const GumbelCopula copula(5.0);
            auto draw = [&] {
                const UniformPair uv = copula.sample(rng);
                return InnovationPair{half_uniform_half_exponential_quantile(uv.u),
                                      normal_quantile(uv.v)};
            };
            return run_bivariate(Garch11{}, Garch11{}, draw, spec);
        }
        default:
            throw DataError("model " + std::string(to_string(spec.id)) + " is univariate");
    }
}

BivariatePath simulate_bivariate_path(const ModelSpec& spec) {
    Xoshiro256 rng = Xoshiro256::stream(spec.seed, spec.stream);
    return simulate_bivariate_path(spec, rng);
}

Series simulate_univariate(const ModelSpec& spec) {
    return Series(simulate_univariate_path(spec));
}

BivariateSeries simulate_bivariate(const ModelSpec& spec) {
    auto path = simulate_bivariate_path(spec);
    return BivariateSeries(std::move(path.x), std::move(path.y));
}

namespace {

// Root of tau sum (Y - theta)_+ - (1 - tau) sum (theta - Y)_+ by bisection.
double solve_expectile_foc(std::span<const double> sample, double tau) {
    const auto [lo_it, hi_it] = std::minmax_element(sample.begin(), sample.end());
    double lo = *lo_it;
    double hi = *hi_it;
    auto foc = [&](double theta) {
        double above = 0.0, below = 0.0;
        for (double y : sample) {
            if (y > theta) above += y - theta;
            else below += theta - y;
        }
        return tau * above - (1.0 - tau) * below;
    };
    for (int iter = 0; iter < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (foc(mid) > 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double batch_standard_error(const std::vector<double>& estimates) {
    const auto b = static_cast<double>(estimates.size());
    if (estimates.size() < 2) return 0.0;
    double mean = 0.0;
    for (double v : estimates) mean += v;
    mean /= b;
    double ss = 0.0;
    for (double v : estimates) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / (b - 1.0) / b);
}

}  // namespace

TrueValue expectile_oracle(std::span<const double> sample, const Level& tau, std::size_t batches) {
    if (sample.size() < 2) throw DataError("expectile oracle needs at least 2 points");
    batches = std::max<std::size_t>(1, std::min(batches, sample.size() / 2));

    TrueValue out;
    out.quantity = TrueQuantity::expectile;
    out.level = tau;
    out.mc_points = sample.size();
    out.value = solve_expectile_foc(sample, tau.tau());

    std::vector<double> per_batch;
    const std::size_t len = sample.size() / batches;
    for (std::size_t i = 0; i < batches; ++i) {
        per_batch.push_back(solve_expectile_foc(sample.subspan(i * len, len), tau.tau()));
    }
    out.mc_se = batch_standard_error(per_batch);
    return out;
}

TrueValue qmes_oracle(std::span<const double> x, std::span<const double> y, const Level& alpha,
                      std::size_t batches) {
    if (x.size() != y.size() || y.empty()) throw DataError("qmes oracle needs aligned samples");
    const std::size_t n = y.size();
    const std::size_t above = tail_count(n, alpha);
    if (above >= n || above == 0) throw DataError("alpha outside the resolvable range of the sample");

    std::vector<double> scratch(y.begin(), y.end());
    const std::size_t index = n - above - 1;  // 0-based Y_{n - floor(n(1-alpha)), n}
    std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(index),
                     scratch.end());
    const double q = scratch[index];

    auto conditional_mean = [&](std::size_t begin, std::size_t end, bool& ok) {
        double acc = 0.0;
        std::size_t hits = 0;
        for (std::size_t t = begin; t < end; ++t) {
            if (y[t] > q) {
                acc += x[t];
                ++hits;
            }
        }
        ok = hits > 0;
        return ok ? acc / static_cast<double>(hits) : 0.0;
    };

    TrueValue out;
    out.quantity = TrueQuantity::qmes;
    out.level = alpha;
    out.mc_points = n;
    bool ok = false;
    out.value = conditional_mean(0, n, ok);
    if (!ok) throw DataError("no exceedances of the alpha-quantile");

    batches = std::max<std::size_t>(1, std::min(batches, n / 2));
    const std::size_t len = n / batches;
    std::vector<double> per_batch;
    for (std::size_t i = 0; i < batches; ++i) {
        const double m = conditional_mean(i * len, (i + 1) * len, ok);
        if (ok) per_batch.push_back(m);
    }
    out.mc_se = batch_standard_error(per_batch);
    return out;
}

TrueValue true_expectile(const ModelSpec& spec, const Level& tau_prime) {
    if (is_bivariate(spec.id)) throw DataError("true_expectile needs a univariate model (a-d)");
    if (spec.n < kOracleMinPoints) throw DataError("oracle needs at least 10^6 simulated points");
    const auto path = simulate_univariate_path(spec);
    return expectile_oracle(path, tau_prime);
}

TrueValue true_qmes(const ModelSpec& spec, const Level& alpha) {
    if (!is_bivariate(spec.id)) throw DataError("true_qmes needs a bivariate model (e-h)");
    if (spec.n < kOracleMinPoints) throw DataError("oracle needs at least 10^6 simulated points");
    const auto path = simulate_bivariate_path(spec);
    return qmes_oracle(path.x, path.y, alpha);
}

}  // namespace tailrisk
