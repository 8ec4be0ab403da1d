#include "estimate.hpp"

#include <charconv>
#include <ostream>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "tailrisk/error.hpp"
#include "tailrisk/inference.hpp"

namespace tailrisk::cli {

namespace {

std::size_t parse_count(std::string_view s, const std::string& whole) {
    std::size_t v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size() || s.empty())
        throw DataError("bad k grid '" + whole + "'");
    return v;
}

[[noreturn]] void rethrow_with_k(std::size_t k) {
    const std::string prefix = "k=" + std::to_string(k) + ": ";
    try {
        throw;
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(prefix + e.what(), e.last_iterate(), e.residual());
    } catch (const NumericalError& e) {
        throw NumericalError(prefix + e.what());
    } catch (const DataError& e) {
        throw DataError(prefix + e.what());
    }
}

template <class Input>
std::optional<BlockScheme> blocks_for(const Input& data, std::size_t n, const EstimateOptions& opts) {
    if (!opts.ci || *opts.ci == CiVariant::iid) return std::nullopt;
    if (opts.blocks) return BlockScheme::make(n, opts.blocks->first, opts.blocks->second);
    return default_blocks(data);
}

Level alpha_for(std::size_t n, const EstimateOptions& opts) {
    if (opts.alpha) return Level(*opts.alpha, LevelKind::extreme);
    return Level::from_tail(1.0 / static_cast<double>(n), LevelKind::extreme);
}

// Second-order fit shared by every k of a run; only needed for d-adj.
std::optional<SecondOrderFit> shared_second_order(const Series& s, const EstimateOptions& opts) {
    if (opts.ci != CiVariant::d_adj) return std::nullopt;
    if (opts.second_order) return opts.second_order;
    return second_order(s, default_second_order_k(s));
}

void attach_ci(EstimateRow& row, const RiskEstimate& point, const Series& driver, const Level& tau_n,
               const TailFit& gamma, const std::optional<BlockScheme>& blocks,
               const std::optional<SecondOrderFit>& so, const EstimateOptions& opts) {
    if (!opts.ci) return;
    double w = gamma.gamma * gamma.gamma;
    double b = 0.0;
    if (*opts.ci != CiVariant::iid) w = block_variance(driver, tau_n, *blocks, gamma);
    if (*opts.ci == CiVariant::d_adj) b = bias_term(gamma, *so);
    const ConfidenceInterval ci =
        ci_extreme(point, tau_n, point.level, gamma, w, b, opts.level, *opts.ci);
    row.ci_lower = ci.lower;
    row.ci_upper = ci.upper;
    row.w_hat = ci.w_hat;
    if (*opts.ci == CiVariant::d_adj) row.b_hat = b;
}

std::optional<std::string> opt(const std::optional<double>& v) {
    if (!v) return std::nullopt;
    return format_double(*v);
}

}  // namespace

Method parse_method(const std::string& name) {
    if (name == "laws") return Method::laws;
    if (name == "qb") return Method::qb;
    if (name == "weissman") return Method::weissman;
    if (name == "qmes") return Method::qmes;
    if (name == "xmes-laws") return Method::xmes_laws;
    if (name == "xmes-qb") return Method::xmes_qb;
    throw DataError("unknown method '" + name + "'");
}

bool is_bivariate(Method m) noexcept {
    return m == Method::qmes || m == Method::xmes_laws || m == Method::xmes_qb;
}

std::optional<CiVariant> parse_ci(const std::string& name) {
    if (name == "iid") return CiVariant::iid;
    if (name == "d") return CiVariant::d;
    if (name == "d-adj" || name == "d_adj") return CiVariant::d_adj;
    if (name == "none") return std::nullopt;
    throw DataError("unknown interval variant '" + name + "'");
}

std::vector<std::size_t> parse_k_grid(const std::string& spec) {
    std::vector<std::string_view> parts;
    std::string_view rest = spec;
    for (std::size_t pos; (pos = rest.find(':')) != std::string_view::npos; rest.remove_prefix(pos + 1))
        parts.push_back(rest.substr(0, pos));
    parts.push_back(rest);
    if (parts.size() > 3) throw DataError("bad k grid '" + spec + "'");

    const std::size_t a = parse_count(parts[0], spec);
    const std::size_t b = parts.size() > 1 ? parse_count(parts[1], spec) : a;
    const std::size_t step = parts.size() > 2 ? parse_count(parts[2], spec) : 1;
    if (a == 0 || b < a || step == 0) throw DataError("bad k grid '" + spec + "'");
    std::vector<std::size_t> ks;
    for (std::size_t k = a; k <= b; k += step) ks.push_back(k);
    return ks;
}

std::vector<EstimateRow> run_estimate(const Series& s, const EstimateOptions& opts) {
    if (is_bivariate(opts.method)) throw DataError("method needs bivariate input");
    if (opts.ks.empty()) throw DataError("no k given");
    const std::size_t n = s.size();
    const Level alpha = alpha_for(n, opts);
    const auto blocks = blocks_for(s, n, opts);
    const auto so = shared_second_order(s, opts);

    std::vector<EstimateRow> rows;
    for (std::size_t k : opts.ks) {
        try {
            if (k >= n) throw DataError("k must be below the sample size");
            const Level tau_n = Level::from_count(k, n);
            const TailFit gamma = hill(s, k);
            RiskEstimate point;
            if (opts.tau_prime) {
                const Level tp(*opts.tau_prime, LevelKind::extreme);
                point.level = tp;
                switch (opts.method) {
                    case Method::laws:
                        point.value = extrapolate(laws_expectile(s, tau_n, opts.expectile), {tau_n, tp, gamma});
                        break;
                    case Method::qb:
                        point.value = extrapolate(qb_expectile(s, tau_n, gamma), {tau_n, tp, gamma});
                        break;
                    default:
                        point.value = weissman_quantile(s, tau_n, tp, gamma);
                        point.kind = EstimateKind::quantile;
                }
            } else {
                switch (opts.method) {
                    case Method::laws:
                        point = composite_laws(s, tau_n, alpha, opts.expectile);
                        break;
                    case Method::qb:
                        point = composite_qb(s, tau_n, alpha);
                        break;
                    default:
                        point.value = weissman_quantile(s, tau_n, alpha, gamma);
                        point.level = alpha;
                        point.kind = EstimateKind::quantile;
                }
            }
            EstimateRow row;
            row.k = k;
            row.tau_n = tau_n.tau();
            row.gamma = gamma.gamma;
            row.tau_prime = point.level.tau();
            row.estimate = point.value;
            attach_ci(row, point, s, tau_n, gamma, blocks, so, opts);
            rows.push_back(row);
        } catch (const Error&) {
            rethrow_with_k(k);
        }
    }
    return rows;
}

std::vector<EstimateRow> run_estimate(const BivariateSeries& b, const EstimateOptions& opts) {
    if (!is_bivariate(opts.method)) return run_estimate(b.y(), opts);
    if (opts.ks.empty()) throw DataError("no k given");
    const std::size_t n = b.size();
    const Level alpha = alpha_for(n, opts);
    const auto blocks = blocks_for(b, n, opts);
    const auto so = shared_second_order(b.x(), opts);

    std::vector<EstimateRow> rows;
    for (std::size_t k : opts.ks) {
        try {
            if (k >= n) throw DataError("k must be below the sample size");
            const Level tau_n = Level::from_count(k, n);
            const TailFit gx = hill(b.x(), k);
            EstimateRow row;
            RiskEstimate point;
            if (opts.method == Method::qmes) {
                point = qmes_weissman(b, tau_n, opts.tau_prime ? Level(*opts.tau_prime, LevelKind::extreme) : alpha);
            } else {
                const TailFit gy = hill(b.y(), k);
                row.gamma_y = gy.gamma;
                const XmesVariant variant = opts.method == Method::xmes_laws ? XmesVariant::laws : XmesVariant::qb;
                if (opts.tau_prime) {
                    MesSpec spec;
                    spec.threshold = variant == XmesVariant::laws ? ThresholdKind::laws_expectile
                                                                  : ThresholdKind::qb_expectile;
                    spec.tau_n = tau_n;
                    spec.tau_prime = Level(*opts.tau_prime, LevelKind::extreme);
                    spec.gamma_x = gx;
                    spec.gamma_y = gy;
                    point = mes_extrapolated(b, spec, opts.expectile);
                } else {
                    CompositeMesOptions copts;
                    copts.expectile = opts.expectile;
                    point = composite_xmes(b, tau_n, alpha, variant, copts);
                }
            }
            row.k = k;
            row.tau_n = tau_n.tau();
            row.gamma = gx.gamma;
            row.tau_prime = point.level.tau();
            row.estimate = point.value;
            attach_ci(row, point, b.x(), tau_n, gx, blocks, so, opts);
            rows.push_back(row);
        } catch (const Error&) {
            rethrow_with_k(k);
        }
    }
    return rows;
}

const std::vector<std::string>& estimate_header() {
    static const std::vector<std::string> h{"k",        "tau_n",    "gamma",    "gamma_y", "tau_prime",
                                            "estimate", "ci_lower", "ci_upper", "w_hat",   "b_hat"};
    return h;
}

void write_estimate_csv(std::ostream& out, const std::vector<EstimateRow>& rows) {
    write_csv_row(out, estimate_header());
    for (const auto& r : rows) {
        write_csv_row(out, {std::to_string(r.k), format_double(r.tau_n), format_double(r.gamma),
                            opt(r.gamma_y).value_or(""), format_double(r.tau_prime),
                            format_double(r.estimate), opt(r.ci_lower).value_or(""),
                            opt(r.ci_upper).value_or(""), opt(r.w_hat).value_or(""),
                            opt(r.b_hat).value_or("")});
    }
}

void write_estimate_json(std::ostream& out, const std::vector<EstimateRow>& rows) {
    auto j = nlohmann::json::array();
    const auto field = [](const std::optional<double>& v) {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    for (const auto& r : rows) {
        j.push_back({{"k", r.k},
                     {"tau_n", r.tau_n},
                     {"gamma", r.gamma},
                     {"gamma_y", field(r.gamma_y)},
                     {"tau_prime", r.tau_prime},
                     {"estimate", r.estimate},
                     {"ci_lower", field(r.ci_lower)},
                     {"ci_upper", field(r.ci_upper)},
                     {"w_hat", field(r.w_hat)},
                     {"b_hat", field(r.b_hat)}});
    }
    out << j.dump(2) << '\n';
}

}  // namespace tailrisk::cli
