#pragma once

#include <cstdint>
#include <random>

namespace stefan {

/// Seeded stream used for every random draw in the library.
///
/// Engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Uniform reals are built by hand from the top 53 bits because
/// std::uniform_real_distribution is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Derive an independent stream from a base seed and a stream tag.
    static Rng stream(std::uint64_t seed, std::uint64_t tag);

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace stefan
