#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tailrisk/estimate.hpp"
#include "tailrisk/expectile.hpp"
#include "tailrisk/mes.hpp"
#include "tailrisk/series.hpp"
#include "tailrisk/tail_index.hpp"

namespace tailrisk::cli {

enum class Method { laws, qb, weissman, qmes, xmes_laws, xmes_qb };

Method parse_method(const std::string& name);
bool is_bivariate(Method m) noexcept;

std::optional<CiVariant> parse_ci(const std::string& name);

// "a:b:s" or "a:b" (step 1), both ends inclusive; a plain integer gives one k.
std::vector<std::size_t> parse_k_grid(const std::string& spec);

struct EstimateOptions {
    std::vector<std::size_t> ks;
    std::optional<double> alpha;      // default 1 - 1/n
    std::optional<double> tau_prime;  // plain extrapolation instead of the composite level
    Method method = Method::laws;
    std::optional<CiVariant> ci = CiVariant::d;
    double level = 0.95;
    std::optional<std::pair<std::size_t, std::size_t>> blocks;  // (r, l); nullopt = auto
    std::optional<SecondOrderFit> second_order;
    ExpectileConfig expectile;
};

struct EstimateRow {
    std::size_t k = 0;
    double tau_n = 0.0;
    double gamma = 0.0;
    std::optional<double> gamma_y;
    double tau_prime = 0.0;
    double estimate = 0.0;
    std::optional<double> ci_lower;
    std::optional<double> ci_upper;
    std::optional<double> w_hat;
    std::optional<double> b_hat;
};

std::vector<EstimateRow> run_estimate(const Series& s, const EstimateOptions& opts);
std::vector<EstimateRow> run_estimate(const BivariateSeries& b, const EstimateOptions& opts);

const std::vector<std::string>& estimate_header();
void write_estimate_csv(std::ostream& out, const std::vector<EstimateRow>& rows);
void write_estimate_json(std::ostream& out, const std::vector<EstimateRow>& rows);

}  // namespace tailrisk::cli
