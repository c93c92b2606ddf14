#pragma once

// Counter-based random streams (Philox4x32-10).
//
// Every Monte Carlo replica gets its own stream keyed by (global seed,
// stream id). Streams are stateless functions of (key, counter), so replicas
// are bit-reproducible regardless of execution order, and a stream can be
// split into substreams by hashing a label into a new stream id.

#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>

namespace levelloop {

namespace detail {

// One Philox 4x32 round. Multipliers/Weyl constants are the standard ones.
inline void philox4x32_round(std::array<std::uint32_t, 4>& ctr,
                             std::array<std::uint32_t, 2>& key) {
    constexpr std::uint32_t M0 = 0xD2511F53u;
    constexpr std::uint32_t M1 = 0xCD9E8D57u;
    const std::uint64_t p0 = static_cast<std::uint64_t>(M0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(M1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += 0x9E3779B9u; // Weyl increments
    key[1] += 0xBB67AE85u;
}

inline std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                                  std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) philox4x32_round(ctr, key);
    return ctr;
}

// splitmix64: used only to derive stream ids from labels, never for output.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_label(std::string_view label) {
    // FNV-1a folded through splitmix64 for avalanche.
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : label) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return splitmix64(h);
}

} // namespace detail

// Deterministic stream of uniforms/gaussians addressed by (seed, stream id).
class random_stream {
  public:
    random_stream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_(stream_id) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

    // Derive an independent substream; the parent stream is unaffected.
    random_stream substream(std::string_view label) const {
        return random_stream(seed_, detail::splitmix64(stream_ ^ detail::hash_label(label)));
    }
    random_stream substream(std::uint64_t index) const {
        return random_stream(seed_, detail::splitmix64(stream_ ^ detail::splitmix64(index + 0x51ED2701u)));
    }

    std::uint32_t next_u32() {
        if (buffer_pos_ == 4) refill();
        return buffer_[buffer_pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; the second value of each pair is cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform(); // in (0, 1], keeps log() finite
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925287 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    void refill() {
        const std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(counter_),
            static_cast<std::uint32_t>(counter_ >> 32),
            static_cast<std::uint32_t>(stream_),
            static_cast<std::uint32_t>(stream_ >> 32),
        };
        const std::array<std::uint32_t, 2> key = {
            static_cast<std::uint32_t>(seed_),
            static_cast<std::uint32_t>(seed_ >> 32),
        };
        buffer_ = detail::philox4x32_10(ctr, key);
        ++counter_;
        buffer_pos_ = 0;
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int buffer_pos_ = 4;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Stream id for a replica of a named experiment under a global seed.
inline random_stream replica_stream(std::uint64_t seed, std::string_view experiment,
                                    std::uint64_t replica) {
    const std::uint64_t base = detail::hash_label(experiment);
    return random_stream(seed, detail::splitmix64(base + 0x9E3779B97F4A7C15ull * (replica + 1)));
}

} // namespace levelloop
