#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace tailrisk {

// xoshiro256** with the 2^128-step jump. Satisfies UniformRandomBitGenerator.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed = 0);

    // Generator for replication `stream` of a run seeded with `seed`: the seed
    // state advanced by `stream` jumps, so streams never overlap.
    static Xoshiro256 stream(std::uint64_t seed, std::uint64_t stream);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;
    void jump() noexcept;

    // Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() noexcept {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::array<std::uint64_t, 4> s_{};
};

}  // namespace tailrisk
