#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace dcopt {

// Stream-split rule for Monte-Carlo trials: trial i of an experiment draws
// from seed base ^ (i * golden-ratio increment). Documented so tables are
// reproducible without storing per-trial seeds.
inline constexpr std::uint64_t kSeedStride = 0x9E3779B97F4A7C15ull;

inline std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial) {
    return base_seed ^ (trial * kSeedStride);
}

// Seedable 64-bit generator (mt19937_64, fully specified by the standard)
// with explicit draw rules, so equal seeds give identical instances on any
// platform. std::uniform_*_distribution is avoided on purpose: its output
// is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer on [lo, hi], inclusive, by rejection sampling.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next());  // full range
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return lo + static_cast<std::int64_t>(x % span);
    }

    // Uniform real on (0, 1]; zero has probability zero and is excluded.
    double uniform_open01() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    // Uniform real on [0, 1).
    double uniform_co01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform real on [lo, hi).
    double uniform_real(double lo, double hi) {
        return lo + (hi - lo) * uniform_co01();
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace dcopt
