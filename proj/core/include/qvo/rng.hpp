#ifndef QVO_RNG_HPP
#define QVO_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>

namespace qvo {

// Philox4x32-10 block cipher (Salmon et al., SC'11). Counter-based: the
// n-th 128-bit block of a stream is a pure function of (key, counter), so
// any path can be generated independently of all others and in any order.
struct Philox4x32 {
    static constexpr std::uint32_t mult_a = 0xD2511F53u;
    static constexpr std::uint32_t mult_b = 0xCD9E8D57u;
    static constexpr std::uint32_t weyl_a = 0x9E3779B9u;
    static constexpr std::uint32_t weyl_b = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t(mult_a) * ctr[0];
            const std::uint64_t p1 = std::uint64_t(mult_b) * ctr[2];
            ctr = {std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0],
                   std::uint32_t(p1),
                   std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1],
                   std::uint32_t(p0)};
            key[0] += weyl_a;
            key[1] += weyl_b;
        }
        return ctr;
    }
};

// SplitMix64 finalizer; used to whiten seed material into stream keys.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_label(std::string_view s) {
    // FNV-1a 64-bit
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// Identifies one per-path random stream: 64-bit whitened key plus the path
// index, which is placed verbatim in the Philox counter.  Distinct path
// indices therefore get disjoint counter spaces by construction.
struct StreamKey {
    std::uint64_t key = 0;
    std::uint64_t path = 0;

    friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

inline StreamKey derive_stream(std::uint64_t base_seed, std::uint64_t label_hash,
                               std::uint64_t path_index, std::uint64_t substream = 0) {
    std::uint64_t k = mix64(base_seed);
    k = mix64(k ^ label_hash);
    k = mix64(k ^ substream);
    return StreamKey{k, path_index};
}

// One independent random stream. Draw order within a stream is fixed by the
// caller's call sequence; streams for distinct (key, path) never overlap.
class RandomStream {
  public:
    explicit RandomStream(StreamKey sk) : key_{std::uint32_t(sk.key), std::uint32_t(sk.key >> 32)} {
        ctr_[2] = std::uint32_t(sk.path);
        ctr_[3] = std::uint32_t(sk.path >> 32);
    }
    RandomStream(std::uint64_t base_seed, std::uint64_t label_hash, std::uint64_t path_index,
                 std::uint64_t substream = 0)
        : RandomStream(derive_stream(base_seed, label_hash, path_index, substream)) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    // Uniform on [0,1), 53-bit resolution.
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1]; safe as a log() argument.
    double uniform_pos() { return double((next_u64() >> 11) + 1) * 0x1.0p-53; }

    double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

    // Marsaglia polar method; caches the spare deviate.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    // Exact Poisson sampler. Knuth's product method below the split point;
    // larger means are split in halves (sums of Poissons are Poisson).
    std::uint64_t poisson(double mean) {
        std::uint64_t n = 0;
        while (mean > 32.0) {
            mean *= 0.5;
            n += poisson_knuth(mean);
        }
        return n + poisson_knuth(mean);
    }

    // Marsaglia-Tsang; shape < 1 handled by the boost U^{1/shape}.
    double gamma(double shape, double scale) {
        if (shape < 1.0) {
            const double u = uniform_pos();
            return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_pos();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
        }
    }

    // Michael-Schucany-Haas transform.
    double inverse_gaussian(double mu, double lambda) {
        const double z = normal();
        const double y = z * z;
        const double x =
            mu + mu * mu * y / (2.0 * lambda) -
            mu / (2.0 * lambda) * std::sqrt(4.0 * mu * lambda * y + mu * mu * y * y);
        if (uniform() <= mu / (mu + x)) return x;
        return mu * mu / x;
    }

  private:
    void refill() {
        buf_ = Philox4x32::block(ctr_, key_);
        pos_ = 0;
        if (++ctr_[0] == 0) ++ctr_[1];  // 64-bit block counter in words 0..1
    }

    std::uint64_t poisson_knuth(double mean) {
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform_pos();
        } while (p > limit);
        return k - 1;
    }

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> ctr_ = {0, 0, 0, 0};
    std::array<std::uint32_t, 4> buf_ = {0, 0, 0, 0};
    int pos_ = 4;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Substream labels used by the path engine, fixed as part of the seed schema.
namespace substream {
inline constexpr std::uint64_t increments = 0;
inline constexpr std::uint64_t clock = 1;
inline constexpr std::uint64_t exact_marginal = 2;
}  // namespace substream

}  // namespace qvo

#endif
