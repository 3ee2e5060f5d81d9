#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fairfold/errors.hpp"

namespace fairfold {

/// Deterministic generator used for every stochastic operation in the
/// library. Algorithm: xoshiro256++ (Blackman/Vigna), state seeded through
/// splitmix64 from (seed, stream_id). Pure 64-bit integer arithmetic, so an
/// identical (seed, stream_id) pair replays the identical sequence on any
/// platform.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t next_u64();

    /// Uniform in [0, 1) with 53 random mantissa bits.
    double next_double();

    /// Uniform integer in [0, bound). Rejection-sampled, bias free.
    std::uint64_t next_below(std::uint64_t bound);

    /// Standard normal via Box-Muller. The second deviate of each pair is
    /// cached, so draws come in a fixed order.
    double next_gaussian();

    /// In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& values) {
        if (values.size() < 2) return;
        for (std::size_t i = values.size() - 1; i > 0; --i) {
            const std::size_t j = static_cast<std::size_t>(next_below(i + 1));
            std::swap(values[i], values[j]);
        }
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

private:
    std::array<std::uint64_t, 4> state_{};
    std::uint64_t seed_ = 0;
    std::uint64_t stream_id_ = 0;
    double gauss_spare_ = 0.0;
    bool has_gauss_spare_ = false;
};

/// splitmix64 output mix. Bijective on u64, used both for state seeding and
/// for stream-id scrambling.
std::uint64_t mix64(std::uint64_t x);

/// Grid coordinates identifying one experiment cell. Values are indexes into
/// the run configuration's ordered lists.
struct CellCoords {
    std::uint32_t dataset = 0;     ///< < 2^16
    std::uint32_t resampler = 0;   ///< < 2^8
    std::uint32_t classifier = 0;  ///< < 2^8
    std::uint32_t protocol = 0;    ///< < 2^8
};

/// Reserved stream slots beyond the per-fold indexes 0..k-1.
inline constexpr std::uint32_t kStreamFoldPlan = 0xFFFD;  ///< fold assignment
inline constexpr std::uint32_t kStreamAugment = 0xFFFE;   ///< whole-set resampling
inline constexpr std::uint32_t kStreamDataGen = 0xFFFF;   ///< synthetic dataset generation

/// Packs (coords, stream_index) into disjoint bit fields, then scrambles with
/// mix64. The packing is injective and mix64 is a bijection, so distinct
/// coordinates always map to distinct stream ids.
///
/// Layout before mixing: dataset<<40 | resampler<<32 | classifier<<24 |
/// protocol<<16 | stream_index.
std::uint64_t stream_for_cell(const CellCoords& coords, std::uint32_t stream_index);

/// Stream for one fold (or reserved slot) of one experiment cell.
SeededRng rng_for_cell(std::uint64_t seed, const CellCoords& coords, std::uint32_t stream_index);

}  // namespace fairfold
