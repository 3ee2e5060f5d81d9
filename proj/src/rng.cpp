#include "fairfold/rng.hpp"

#include <cmath>
#include <numbers>

namespace fairfold {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    // splitmix64 walk over seed ^ scrambled stream, one draw per state word.
    std::uint64_t sm = seed ^ mix64(stream_id);
    for (auto& word : state_) {
        sm += 0x9E3779B97F4A7C15ull;
        word = mix64(sm);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
        state_[0] = 1;  // xoshiro forbids the all-zero state
    }
}

std::uint64_t SeededRng::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double SeededRng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t SeededRng::next_below(std::uint64_t bound) {
    if (bound == 0) raise(Errc::InvalidValue, "next_below bound must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t draw = next_u64();
    while (draw >= limit) draw = next_u64();
    return draw % bound;
}

double SeededRng::next_gaussian() {
    if (has_gauss_spare_) {
        has_gauss_spare_ = false;
        return gauss_spare_;
    }
    const double u1 = 1.0 - next_double();  // (0, 1], keeps log finite
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    gauss_spare_ = radius * std::sin(angle);
    has_gauss_spare_ = true;
    return radius * std::cos(angle);
}

std::uint64_t stream_for_cell(const CellCoords& coords, std::uint32_t stream_index) {
    if (coords.dataset >= (1u << 16) || coords.resampler >= (1u << 8) ||
        coords.classifier >= (1u << 8) || coords.protocol >= (1u << 8) ||
        stream_index > 0xFFFF) {
        raise(Errc::InvalidValue, "cell coordinate exceeds stream field width");
    }
    const std::uint64_t packed = (static_cast<std::uint64_t>(coords.dataset) << 40) |
                                 (static_cast<std::uint64_t>(coords.resampler) << 32) |
                                 (static_cast<std::uint64_t>(coords.classifier) << 24) |
                                 (static_cast<std::uint64_t>(coords.protocol) << 16) |
                                 static_cast<std::uint64_t>(stream_index);
    return mix64(packed);
}

SeededRng rng_for_cell(std::uint64_t seed, const CellCoords& coords, std::uint32_t stream_index) {
    return SeededRng(seed, stream_for_cell(coords, stream_index));
}

}  // namespace fairfold
