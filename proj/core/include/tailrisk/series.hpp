#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tailrisk/level.hpp"

namespace tailrisk {

// A univariate sample kept in original (time) order alongside its ascending
// order statistics. Immutable after construction.
class Series {
public:
    Series() = default;

    // Throws DataError on non-finite values.
    explicit Series(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    std::span<const double> values() const noexcept { return values_; }
    std::span<const double> sorted() const noexcept { return sorted_; }

    // Y_{i,n} with 1-based indexing, 1 <= i <= n.
    double order_stat(std::size_t i) const;

    double min() const;
    double max() const;

private:
    std::vector<double> values_;
    std::vector<double> sorted_;
};

// Y_{n - floor(n(1-tau)), n}. Throws DataError when the index degenerates.
double empirical_quantile(const Series& s, const Level& tau);

// n^{-1} #{t : Y_t > u}.
double empirical_survival(const Series& s, double u);

// Empirical distribution function evaluated at each observation, in original
// order. Ties receive their average rank, so the value for Y_t is
// (average rank of Y_t) / n.
std::vector<double> ranks_to_uniform(std::span<const double> values);
std::vector<double> ranks_to_uniform(const Series& s);

}  // namespace tailrisk
