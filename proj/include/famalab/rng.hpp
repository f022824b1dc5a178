#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace famalab {

/// Philox4x32-10 block function (Salmon et al., Random123).
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t kM0 = 0xD2511F53u;
    constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u;
    constexpr std::uint32_t kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
        ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
        key[0] += kW0;
        key[1] += kW1;
    }
    return ctr;
}

/// Random stream of one Monte Carlo trial. The stream is a pure function of
/// (seed, trial): key = seed, counter = (block index, trial index).
class TrialStream {
public:
    TrialStream(std::uint64_t seed, std::uint64_t trial)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          trial_lo_(static_cast<std::uint32_t>(trial)),
          trial_hi_(static_cast<std::uint32_t>(trial >> 32)) {}

    std::array<std::uint32_t, 4> next_block() {
        const std::uint64_t b = block_++;
        return philox4x32({static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                           trial_lo_, trial_hi_},
                          key_);
    }

    /// Two independent uniforms on (0, 1) with 53-bit resolution.
    std::array<double, 2> uniform2() {
        const auto w = next_block();
        return {to_unit(w[0], w[1]), to_unit(w[2], w[3])};
    }

    double uniform() { return uniform2()[0]; }

    /// CN(0, 1): real and imaginary parts i.i.d. N(0, 1/2) (Box-Muller).
    std::complex<double> complex_normal() {
        const auto u = uniform2();
        const double r = std::sqrt(-std::log(u[0]));
        const double t = 2.0 * std::numbers::pi * u[1];
        return {r * std::cos(t), r * std::sin(t)};
    }

private:
    static double to_unit(std::uint32_t hi, std::uint32_t lo) {
        const std::uint64_t bits = (std::uint64_t{hi} << 21) ^ (std::uint64_t{lo} >> 11);
        return (static_cast<double>(bits) + 0.5) * 0x1p-53;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint32_t trial_lo_;
    std::uint32_t trial_hi_;
    std::uint64_t block_ = 0;
};

}  // namespace famalab
