#pragma once

#include <cstdint>

namespace dyham {

// splitmix64: 64-bit state advanced by the Weyl constant 0x9E3779B97F4A7C15,
// output mixed with the (0xBF58476D1CE4E5B9, 0x94D049BB133111EB) finalizer.
// Chosen so that every report is reproducible from its recorded seed alone,
// independent of platform or standard-library implementation.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform on [0, 1), 53 random bits
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // uniform on [-1, 1]
    double next_symmetric() { return 2.0 * next_unit() - 1.0; }

private:
    std::uint64_t state_;
};

}  // namespace dyham
