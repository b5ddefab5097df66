#pragma once

#include <array>
#include <cstdint>

namespace abc_arma::rng {

/// Philox4x32-10 block function (Salmon et al., Random123).
/// Maps a 128-bit counter and a 64-bit key to 128 random bits.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// SplitMix64 finaliser, used to derive per-stage keys from a master seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Key for stage `stage` of a run seeded with `master_seed`.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stage) noexcept {
    return splitmix64(master_seed ^ splitmix64(stage));
}

/// A counter-based random stream.
///
/// The stream is identified by (key, stream_id). Words 2 and 3 of the Philox
/// counter hold the stream id, words 0 and 1 a block index that advances as
/// output is consumed. Two streams with distinct ids never share a counter,
/// so proposal `i` of an ABC run sees the same numbers whatever thread
/// evaluates it.
///
/// Variates:
///   - uniform(): 53-bit mantissa, open interval (0, 1): ((u >> 11) + 0.5) * 2^-53
///   - normal(): Marsaglia polar method on 2*uniform()-1 pairs, second
///     variate of each accepted pair is cached
///   - gamma(shape, rate): Marsaglia-Tsang squeeze; shape < 1 uses the
///     gamma(shape+1) * U^(1/shape) boost
class Stream {
public:
    explicit Stream(std::uint64_t key, std::uint64_t stream_id = 0) noexcept;

    std::uint64_t next_u64() noexcept;
    double uniform() noexcept;
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    double normal() noexcept;
    double gamma(double shape, double rate) noexcept;

private:
    void refill() noexcept;

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace abc_arma::rng
