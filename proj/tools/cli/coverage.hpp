#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tailrisk/simulate.hpp"

namespace tailrisk::cli {

struct CoverageOptions {
    ModelId model = ModelId::a;
    std::size_t reps = 500;
    std::size_t n = 2500;
    double tau_prime = 0.9995;
    // Bivariate models: estimate at alpha = 1 - (1 - tau')(1/gamma_Y - 1) using the
    // model's true gamma_Y. Without it tau_prime is read as alpha directly.
    bool alpha_from_tau_prime = false;
    std::vector<std::size_t> ks{100, 150, 200};
    std::uint64_t seed = 1;
    std::size_t threads = 0;  // 0: hardware concurrency
    double level = 0.95;
    std::optional<double> truth;
    std::size_t truth_points = 10'000'000;
};

struct CoverageRow {
    std::size_t k = 0;
    std::string variant;
    std::size_t misses = 0;
    std::size_t valid = 0;
    std::size_t failed = 0;
    double rate = 0.0;  // percent of valid replications whose interval misses the truth
};

struct CoverageReport {
    ModelId model = ModelId::a;
    std::size_t reps = 0;
    std::vector<std::size_t> ks;
    double nominal = 5.0;
    double level = 0.9995;  // tau' (univariate) or alpha (bivariate)
    double truth = 0.0;
    std::vector<CoverageRow> rows;

    const CoverageRow& at(std::size_t k, const std::string& variant) const;
};

const std::vector<std::string>& coverage_variants(bool bivariate);

CoverageReport run_coverage(const CoverageOptions& opts);

void write_coverage_csv(std::ostream& out, const CoverageReport& r);
void write_coverage_json(std::ostream& out, const CoverageReport& r);

}  // namespace tailrisk::cli
