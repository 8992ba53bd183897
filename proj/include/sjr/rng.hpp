#ifndef SJR_RNG_HPP
#define SJR_RNG_HPP

// Counter-based random streams (Philox4x32-10, Salmon et al., SC 2011).
//
// A stream is addressed by (seed, stream id). Simulation code keys the
// stream id by sample index, so any partition of samples across workers
// reproduces the exact same draws. Distribution sampling is hand-rolled
// (Box-Muller, Marsaglia-Tsang) so sequences do not depend on the standard
// library implementation.

#include <array>
#include <cmath>
#include <cstdint>

namespace sjr::rng {

/// One Philox4x32-10 block: 4 output words from a 128-bit counter and a
/// 64-bit key.
inline std::array<std::uint32_t, 4> philox4x32_block(
    std::uint64_t key, const std::array<std::uint32_t, 4>& counter) {
    constexpr std::uint32_t kWeylA = 0x9E3779B9u;
    constexpr std::uint32_t kWeylB = 0xBB67AE85u;
    constexpr std::uint32_t kMulA = 0xD2511F53u;
    constexpr std::uint32_t kMulB = 0xCD9E8D57u;

    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    std::array<std::uint32_t, 4> s = counter;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMulA) * s[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMulB) * s[2];
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        s = {hi1 ^ s[1] ^ k0, lo1, hi0 ^ s[3] ^ k1, lo0};
        k0 += kWeylA;
        k1 += kWeylB;
    }
    return s;
}

class PhiloxStream {
public:
    PhiloxStream(std::uint64_t seed, std::uint64_t stream_id)
        : key_(seed), stream_(stream_id) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (0, 1].
    double next_open_double() { return 1.0 - next_double(); }

    /// Standard normal draw (Box-Muller, cosine branch; two uniforms each).
    double next_normal() {
        const double u1 = next_open_double();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    /// Gamma(shape, 1) draw, shape > 0 (Marsaglia-Tsang, with the
    /// power-of-uniform boost for shape < 1).
    double next_gamma(double shape) {
        if (shape < 1.0) {
            const double u = next_open_double();
            return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = next_normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = next_open_double();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    std::uint64_t seed() const { return key_; }
    std::uint64_t stream_id() const { return stream_; }

private:
    void refill() {
        buf_ = philox4x32_block(
            key_, {static_cast<std::uint32_t>(block_),
                   static_cast<std::uint32_t>(block_ >> 32),
                   static_cast<std::uint32_t>(stream_),
                   static_cast<std::uint32_t>(stream_ >> 32)});
        ++block_;
        pos_ = 0;
    }

    std::uint64_t key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
};

}  // namespace sjr::rng

#endif
