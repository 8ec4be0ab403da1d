#include "tailrisk/mes.hpp"

#include <string>

#include "tailrisk/error.hpp"
#include "tailrisk/tail_index.hpp"

namespace tailrisk {

BivariateSeries::BivariateSeries(std::vector<double> x, std::vector<double> y) {
    if (x.size() != y.size()) {
        throw DataError("bivariate series needs equal lengths (x=" + std::to_string(x.size()) +
                        ", y=" + std::to_string(y.size()) + ")");
    }
    x_ = Series(std::move(x));
    y_ = Series(std::move(y));
}

double mes_tail_ratio(const BivariateSeries& b, double z_bar) {
    const auto x = b.x().values();
    const auto y = b.y().values();
    double numerator = 0.0;
    std::size_t exceedances = 0;
    for (std::size_t t = 0; t < y.size(); ++t) {
        if (y[t] > z_bar) {
            ++exceedances;
            if (x[t] > 0.0) numerator += x[t];
        }
    }
    if (exceedances == 0) throw DataError("empty tail: threshold too high for sample");
    return numerator / static_cast<double>(exceedances);
}

double mes_threshold(const BivariateSeries& b, ThresholdKind kind, const Level& tau_n,
                     const std::optional<TailFit>& gamma_y, const ExpectileConfig& cfg) {
    switch (kind) {
        case ThresholdKind::quantile:
            return empirical_quantile(b.y(), tau_n);
        case ThresholdKind::laws_expectile:
            return laws_expectile(b.y(), tau_n, cfg);
        case ThresholdKind::qb_expectile:
            if (!gamma_y) throw DataError("quantile-based expectile threshold needs gamma_y");
            return qb_expectile(b.y(), tau_n, *gamma_y);
    }
    throw DataError("unknown threshold kind");
}

RiskEstimate mes_extrapolated(const BivariateSeries& b, const MesSpec& spec,
                              const ExpectileConfig& cfg) {
    const double z_bar = mes_threshold(b, spec.threshold, spec.tau_n, spec.gamma_y, cfg);
    const double ratio = mes_tail_ratio(b, z_bar);

    RiskEstimate out;
    out.value = extrapolate(ratio, {spec.tau_n, spec.tau_prime, spec.gamma_x});
    out.level = spec.tau_prime;
    out.kind = spec.threshold == ThresholdKind::quantile ? EstimateKind::qmes : EstimateKind::xmes;
    return out;
}

RiskEstimate composite_xmes(const BivariateSeries& b, const Level& tau_n, const Level& alpha,
                            XmesVariant variant, const CompositeMesOptions& opts) {
    if (!(tau_n < alpha)) throw DataError("composite estimation needs alpha > tau_n");
    const std::size_t k = tail_count(b.size(), tau_n);
    const TailFit gamma_x = hill(b.x(), k);
    const TailFit gamma_y = hill(b.y(), opts.k_y.value_or(k));

    MesSpec spec;
    spec.threshold =
        variant == XmesVariant::laws ? ThresholdKind::laws_expectile : ThresholdKind::qb_expectile;
    spec.tau_n = tau_n;
    spec.tau_prime = tau_prime_hat(alpha, gamma_y);
    spec.gamma_x = gamma_x;
    spec.gamma_y = gamma_y;
    return mes_extrapolated(b, spec, opts.expectile);
}

RiskEstimate qmes_weissman(const BivariateSeries& b, const Level& tau_n, const Level& alpha) {
    MesSpec spec;
    spec.threshold = ThresholdKind::quantile;
    spec.tau_n = tau_n;
    spec.tau_prime = alpha;
    spec.gamma_x = hill(b.x(), tail_count(b.size(), tau_n));
    return mes_extrapolated(b, spec);
}

}  // namespace tailrisk
