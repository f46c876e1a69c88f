#pragma once

#include <cstdint>
#include <random>

namespace qlnc {

// Seeded stream of single bits. Measurement outcomes in the formula engine
// and the stabilizer oracle are drawn from one shared stream so that both
// layers agree on correction traffic for a given seed.
class BitSource {
public:
    explicit BitSource(std::uint64_t seed) : rng_(seed) {}

    int next_bit() { return static_cast<int>(rng_() & 1u); }

    // Uniform integer in [0, bound), for payload generation in tests/CLI.
    std::uint64_t next_below(std::uint64_t bound) {
        std::uniform_int_distribution<std::uint64_t> dist(0, bound - 1);
        return dist(rng_);
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace qlnc
