#pragma once

#include <cstddef>

namespace tailrisk {

enum class LevelKind { intermediate, extreme };

// A probability level tau in (0,1).
//
// The level is stored through its tail probability 1 - tau. Extreme levels
// such as 1 - 1/n lose most of their significant digits when written as tau,
// and every extrapolation formula consumes the tail probability directly.
class Level {
public:
    // Throws DataError unless 0 < tau < 1.
    explicit Level(double tau, LevelKind kind = LevelKind::intermediate);

    // Level with the given tail probability p = 1 - tau, 0 < p < 1.
    static Level from_tail(double p, LevelKind kind = LevelKind::intermediate);

    // tau_n = 1 - k/n, the usual intermediate level for the top k order statistics.
    static Level from_count(std::size_t k, std::size_t n);

    double tau() const noexcept { return 1.0 - tail_; }
    double tail() const noexcept { return tail_; }
    LevelKind kind() const noexcept { return kind_; }

    friend bool operator==(const Level& a, const Level& b) noexcept { return a.tail_ == b.tail_; }
    friend bool operator<(const Level& a, const Level& b) noexcept { return a.tail_ > b.tail_; }

private:
    Level(double tail, LevelKind kind, int /*tail tag*/);

    double tail_;
    LevelKind kind_;
};

// floor(n (1 - tau)), the number of order statistics above the empirical
// tau-quantile. Products such as n * (k/n) that land within rounding distance
// of an integer are snapped to it.
std::size_t tail_count(std::size_t n, const Level& level);

}  // namespace tailrisk
