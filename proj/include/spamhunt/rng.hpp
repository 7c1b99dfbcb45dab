#pragma once

#include <cstdint>
#include <random>

namespace spamhunt {

/// Deterministic RNG helpers over the standard-specified mt19937_64
/// stream, avoiding distribution objects whose output is
/// implementation-defined.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, n); n must be positive.
    std::size_t bounded(std::size_t n) { return static_cast<std::size_t>(next() % n); }

    std::int64_t range(std::int64_t lo, std::int64_t hi) { // inclusive bounds
        return lo + static_cast<std::int64_t>(bounded(static_cast<std::size_t>(hi - lo + 1)));
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    template <class T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::swap(values[i - 1], values[bounded(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace spamhunt
