#include "coverage.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "tailrisk/error.hpp"
#include "tailrisk/expectile.hpp"
#include "tailrisk/inference.hpp"
#include "tailrisk/mes.hpp"
#include "tailrisk/tail_index.hpp"

namespace tailrisk::cli {

namespace {

enum Outcome : std::uint8_t { hit, miss, failed };

constexpr std::uint64_t kTruthSeedOffset = 0x9E3779B97F4A7C15ull;
constexpr CiVariant kCi[] = {CiVariant::iid, CiVariant::d, CiVariant::d_adj};

struct Setup {
    const CoverageOptions& opts;
    bool bivariate;
    Level target;  // tau' for expectiles, alpha for MES
    double truth;
};

// One replication: outcomes[k index][estimator * 3 + ci variant].
std::vector<Outcome> replicate(const Setup& st, std::size_t rep) {
    const auto& opts = st.opts;
    const std::size_t nv = 6;
    std::vector<Outcome> out(opts.ks.size() * nv, failed);
    const ModelSpec spec = make_model_spec(opts.model, opts.n, opts.seed, rep);

    Series uni;
    BivariateSeries biv;
    if (st.bivariate)
        biv = simulate_bivariate(spec);
    else
        uni = simulate_univariate(spec);
    const Series& driver = st.bivariate ? biv.x() : uni;

    std::optional<BlockScheme> blocks;
    std::optional<SecondOrderFit> so;
    try {
        blocks = st.bivariate ? default_blocks(biv) : default_blocks(uni);
    } catch (const Error&) {
    }
    try {
        so = second_order(driver, default_second_order_k(driver));
    } catch (const Error&) {
    }

    for (std::size_t ki = 0; ki < opts.ks.size(); ++ki) {
        const std::size_t k = opts.ks[ki];
        if (k >= opts.n) continue;
        const Level tau_n = Level::from_count(k, opts.n);
        TailFit gamma;
        try {
            gamma = hill(driver, k);
        } catch (const Error&) {
            continue;
        }
        std::optional<double> w_block, b_hat;
        try {
            if (blocks) w_block = block_variance(driver, tau_n, *blocks, gamma);
        } catch (const Error&) {
        }
        try {
            if (so) b_hat = bias_term(gamma, *so);
        } catch (const Error&) {
        }

        for (std::size_t e = 0; e < 2; ++e) {
            RiskEstimate point;
            try {
                if (st.bivariate) {
                    point = composite_xmes(biv, tau_n, st.target, e == 0 ? XmesVariant::laws : XmesVariant::qb);
                } else {
                    const double base = e == 0 ? laws_expectile(uni, tau_n) : qb_expectile(uni, tau_n, gamma);
                    point.value = extrapolate(base, {tau_n, st.target, gamma});
                    point.level = st.target;
                }
            } catch (const Error&) {
                continue;
            }
            for (std::size_t c = 0; c < 3; ++c) {
                const CiVariant v = kCi[c];
                if (v != CiVariant::iid && !w_block) continue;
                if (v == CiVariant::d_adj && !b_hat) continue;
                try {
                    const double w = v == CiVariant::iid ? gamma.gamma * gamma.gamma : *w_block;
                    const double b = v == CiVariant::d_adj ? *b_hat : 0.0;
                    const ConfidenceInterval ci =
                        ci_extreme(point, tau_n, point.level, gamma, w, b, opts.level, v);
                    const bool covered = ci.lower <= st.truth && st.truth <= ci.upper;
                    out[ki * nv + e * 3 + c] = covered ? hit : miss;
                } catch (const Error&) {
                }
            }
        }
    }
    return out;
}

}  // namespace

const CoverageRow& CoverageReport::at(std::size_t k, const std::string& variant) const {
    for (const auto& r : rows)
        if (r.k == k && r.variant == variant) return r;
    throw DataError("no coverage row for k=" + std::to_string(k) + " " + variant);
}

const std::vector<std::string>& coverage_variants(bool bivariate) {
    static const std::vector<std::string> uni{"LAWS-IID", "LAWS-D", "LAWS-D-ADJ",
                                              "QB-IID",   "QB-D",   "QB-D-ADJ"};
    static const std::vector<std::string> biv{"XMES-LAWS-IID", "XMES-LAWS-D", "XMES-LAWS-D-ADJ",
                                              "XMES-QB-IID",   "XMES-QB-D",   "XMES-QB-D-ADJ"};
    return bivariate ? biv : uni;
}

CoverageReport run_coverage(const CoverageOptions& opts) {
    if (opts.reps < 1) throw DataError("coverage needs at least one replication");
    if (opts.ks.empty()) throw DataError("no k given");
    const bool bivariate = tailrisk::is_bivariate(opts.model);

    Level target(opts.tau_prime, LevelKind::extreme);
    if (bivariate && opts.alpha_from_tau_prime) {
        const double g = model_tail_index_y(opts.model);
        target = Level::from_tail(target.tail() * (1.0 / g - 1.0), LevelKind::extreme);
    }

    double truth = 0.0;
    if (opts.truth) {
        truth = *opts.truth;
    } else {
        const ModelSpec long_run = make_model_spec(opts.model, opts.truth_points, opts.seed ^ kTruthSeedOffset);
        truth = bivariate ? true_qmes(long_run, target).value : true_expectile(long_run, target).value;
    }

    const Setup st{opts, bivariate, target, truth};
    std::vector<std::vector<Outcome>> results(opts.reps);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> stop{false};
    const auto worker = [&] {
        for (std::size_t j; !stop && (j = next++) < opts.reps;) {
            try {
                results[j] = replicate(st, j);
            } catch (...) {
                if (!stop.exchange(true)) error = std::current_exception();
            }
        }
    };
    std::size_t threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, opts.reps);
    std::vector<std::thread> pool;
    for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);

    CoverageReport report;
    report.model = opts.model;
    report.reps = opts.reps;
    report.ks = opts.ks;
    report.nominal = std::round(1e9 * 100.0 * (1.0 - opts.level)) / 1e9;
    report.level = target.tau();
    report.truth = truth;
    const auto& names = coverage_variants(bivariate);
    for (std::size_t ki = 0; ki < opts.ks.size(); ++ki) {
        for (std::size_t v = 0; v < names.size(); ++v) {
            CoverageRow row;
            row.k = opts.ks[ki];
            row.variant = names[v];
            for (const auto& r : results) {
                const Outcome o = r[ki * names.size() + v];
                if (o == failed) {
                    ++row.failed;
                } else {
                    ++row.valid;
                    row.misses += (o == miss);
                }
            }
            row.rate = row.valid ? 100.0 * static_cast<double>(row.misses) / static_cast<double>(row.valid) : 0.0;
            report.rows.push_back(row);
        }
    }
    return report;
}

void write_coverage_csv(std::ostream& out, const CoverageReport& r) {
    write_csv_row(out, {"model", "k", "variant", "error_rate", "misses", "valid", "failed",
                        "nominal", "level", "truth"});
    for (const auto& row : r.rows) {
        write_csv_row(out, {std::string(to_string(r.model)), std::to_string(row.k), row.variant,
                            format_double(row.rate), std::to_string(row.misses),
                            std::to_string(row.valid), std::to_string(row.failed),
                            format_double(r.nominal), format_double(r.level),
                            format_double(r.truth)});
    }
}

void write_coverage_json(std::ostream& out, const CoverageReport& r) {
    nlohmann::json j;
    j["model"] = std::string(to_string(r.model));
    j["reps"] = r.reps;
    j["k_grid"] = r.ks;
    j["nominal"] = r.nominal;
    j["level"] = r.level;
    j["truth"] = r.truth;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : r.rows) {
        j["rows"].push_back({{"k", row.k},
                             {"variant", row.variant},
                             {"error_rate", row.rate},
                             {"misses", row.misses},
                             {"valid", row.valid},
                             {"failed", row.failed}});
    }
    out << j.dump(2) << '\n';
}

}  // namespace tailrisk::cli
