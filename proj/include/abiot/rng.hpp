#pragma once

#include <cstdint>
#include <random>

namespace abiot {

// Deterministic RNG wrapper. std::uniform_real_distribution is
// implementation-defined, so uniform doubles are built from raw bits to keep
// outputs byte-identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1) with 53 bits of precision.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

    bool bernoulli(double p) { return uniform() < p; }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

// Mixes a run seed with a stream tag so distinct consumers (pest placement,
// removal draws, ...) never share a sequence.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Counter-based uniform in [0, 1): a pure function of (seed, a, b), so draws
// for one consumer never shift another's stream.
inline double counter_uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return static_cast<double>(mix_seed(mix_seed(seed, a), b) >> 11) * 0x1.0p-53;
}

}  // namespace abiot
