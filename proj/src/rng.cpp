#include "mimoic/rng.hpp"

#include <cmath>
#include <numbers>

namespace mimoic {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t state = base ^ rotl(stream * 0xd1b54a32d192ed03ULL, 17);
    splitmix64(state);
    return splitmix64(state);
}

Xoshiro256::Xoshiro256(std::uint64_t seed) {
    std::uint64_t state = seed;
    for (auto& word : s_)
        word = splitmix64(state);
}

Xoshiro256::result_type Xoshiro256::operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

Complex Xoshiro256::complex_gaussian() {
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

ComplexVector random_unit_vector(Xoshiro256& rng, Eigen::Index dim) {
    ComplexVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        v(i) = rng.complex_gaussian();
    return v / v.norm();
}

} // namespace mimoic
