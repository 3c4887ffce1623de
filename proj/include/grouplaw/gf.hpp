#pragma once

#include <cstdint>

#include "grouplaw/error.hpp"

namespace grouplaw::gf {

bool is_prime(std::uint32_t n);

// Throws DomainError unless p is prime. Trial division; p stays small here.
void require_prime(std::uint32_t p);

// Raw kernels on canonical representatives in [0, p). Inputs must already be
// reduced; no validation, these sit inside the dense tensor loops.
inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint32_t s = a + b;
  return s >= p ? s - p : s;
}

inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : a + p - b;
}

inline std::uint32_t neg(std::uint32_t a, std::uint32_t p) {
  return a == 0 ? 0 : p - a;
}

inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(
      (static_cast<std::uint64_t>(a) * b) % p);
}

std::uint32_t pow(std::uint32_t a, std::uint64_t k, std::uint32_t p);

// Multiplicative inverse by extended Euclid. Throws DomainError on a == 0.
std::uint32_t inv(std::uint32_t a, std::uint32_t p);

// Reduce an arbitrary signed integer to its canonical representative.
inline std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

// An element of the prime field F_p. Value semantics; the modulus rides
// along and is checked on every binary operation. The modulus is verified
// prime at construction.
class Fp {
public:
  Fp(std::int64_t value, std::uint32_t p);

  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return value_ == 0; }

  Fp operator+(const Fp& o) const;
  Fp operator-(const Fp& o) const;
  Fp operator*(const Fp& o) const;
  Fp operator-() const;
  Fp inverse() const;
  Fp pow(std::int64_t k) const;

  bool operator==(const Fp& o) const = default;

private:
  std::uint32_t value_;
  std::uint32_t p_;

  void check_compatible(const Fp& o) const;
};

}  // namespace grouplaw::gf
