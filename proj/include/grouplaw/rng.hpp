#pragma once

#include <cstdint>
#include <random>

namespace grouplaw {

// Seeded deterministic random source. All sampling in the library goes
// through this wrapper so that reports are reproducible bit-for-bit: the
// mapping from raw engine output to bounded integers is pinned here instead
// of relying on std::uniform_int_distribution, whose output is
// implementation-defined.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform draw from [0, n), unbiased via rejection sampling. n must be > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace grouplaw
