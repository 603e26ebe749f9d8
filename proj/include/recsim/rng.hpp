#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace recsim {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// 64-bit FNV-1a of a byte string.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// Maps the top 53 bits of a word onto [0, 1).
inline double unit_interval(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Stream identifier reserved for initial-condition sampling.
inline constexpr std::uint64_t kInitStream = std::numeric_limits<std::uint64_t>::max();

/**
 * Counter-based random stream.
 *
 * The seed selects the Philox key; the stream id occupies the upper half of
 * the 128-bit counter and the block index the lower half. Every block yields
 * two 64-bit words, so any position of any stream can be computed without
 * touching shared state. Satisfies UniformRandomBitGenerator for sequential
 * use (e.g. with std::gamma_distribution).
 */
class CounterStream {
public:
    using result_type = std::uint64_t;

    CounterStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t first_block = 0) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    /// Random access to block `index` of this stream; does not advance.
    std::array<std::uint64_t, 2> block(std::uint64_t index) const noexcept;

    result_type operator()() noexcept;
    double uniform() noexcept { return unit_interval((*this)()); }

    std::uint64_t stream_id() const noexcept { return stream_id_; }

private:
    PhiloxKey key_;
    std::uint64_t stream_id_;
    std::uint64_t next_block_;
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;
};

}  // namespace recsim
