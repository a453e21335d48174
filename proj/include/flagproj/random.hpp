#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace flagproj {

/// Deterministic random source. Results must be bit-reproducible across
/// platforms, so only the fully-specified mt19937_64 core is used; the
/// uniform and gaussian transforms are implemented here instead of through
/// std::uniform_real_distribution / std::normal_distribution, whose outputs
/// are implementation-defined.
///
/// A stream is identified by (seed, stream_id). Substreams derived through
/// substream() are statistically independent for distinct ids, which lets
/// estimators hand one stream per face / per check and stay reproducible
/// no matter the evaluation order or worker count.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id),
          engine_(mix64(mix64(seed + 0x9e3779b97f4a7c15ull) ^ mix64(stream_id))) {}

    /// Independent stream for a sub-task. Chained derivation is fine:
    /// substream(a).substream(b) and substream(b).substream(a) differ.
    [[nodiscard]] RandomStream substream(std::uint64_t id) const {
        return RandomStream(seed_, mix64(stream_id_ ^ mix64(id + 0x632be59bd9b4e019ull)));
    }

    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    [[nodiscard]] std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1): top 53 bits of the generator output.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; the second value of each pair is cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log1p(-u1));  // u1 in [0,1) so 1-u1 > 0
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Uniform integer in [0, n). Rejection keeps it exactly uniform.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t limit = n * (~0ull / n);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

private:
    static std::uint64_t mix64(std::uint64_t z) {
        // splitmix64 finalizer
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace flagproj
