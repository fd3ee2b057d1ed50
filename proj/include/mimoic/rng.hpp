#pragma once

#include <array>
#include <cstdint>

#include "mimoic/numerics.hpp"

namespace mimoic {

// xoshiro256** (Blackman & Vigna), state expanded from a 64-bit seed with
// SplitMix64. Output is identical on every platform, which keeps sweep CSVs
// reproducible.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()();

    // Uniform on [0, 1) with 53 random bits.
    double uniform();

    // Circularly symmetric CN(0, 1) via Box-Muller in polar form:
    // |z|^2 = -ln(u1) ~ Exp(1), arg z = 2 pi u2.
    Complex complex_gaussian();

private:
    std::array<std::uint64_t, 4> s_{};
};

std::uint64_t splitmix64(std::uint64_t& state);

// Seed for an independent stream derived from (base, stream).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

ComplexVector random_unit_vector(Xoshiro256& rng, Eigen::Index dim);

} // namespace mimoic
