#pragma once

#include <cstdint>
#include <random>

namespace qgan {

/// Deterministic random stream.
///
/// mt19937_64 output is bit-exact across standard library implementations,
/// but the std distribution adapters are not, so the mappings to doubles
/// are spelled out here. Reproducibility of every run depends on all
/// randomness flowing through this class.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 bits of precision.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Fresh seed for a derived sub-stream.
    std::uint64_t fork_seed() { return mix_seed(engine_(), 0x6a09e667f3bcc909ULL); }

    /// Stable seed mixer (splitmix64 finalizer over the combined words).
    /// Used both for sub-streams and for deriving per-run seeds from a
    /// master seed in multi-run experiments.
    static std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace qgan
