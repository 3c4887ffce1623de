#include "grouplaw/gf.hpp"

#include <string>

namespace grouplaw::gf {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint32_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

void require_prime(std::uint32_t p) {
  if (!is_prime(p)) {
    throw DomainError("modulus " + std::to_string(p) + " is not prime");
  }
}

std::uint32_t pow(std::uint32_t a, std::uint64_t k, std::uint32_t p) {
  std::uint32_t result = 1 % p;
  std::uint32_t base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base, p);
    base = mul(base, base, p);
    k >>= 1;
  }
  return result;
}

std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
  if (a == 0) {
    throw DomainError("division by zero in F_" + std::to_string(p));
  }
  // Extended Euclid on (a, p); p prime guarantees gcd 1.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

Fp::Fp(std::int64_t value, std::uint32_t p) : value_(0), p_(p) {
  require_prime(p);
  value_ = reduce(value, p);
}

void Fp::check_compatible(const Fp& o) const {
  if (p_ != o.p_) {
    throw ShapeError("incompatible fields F_" + std::to_string(p_) +
                     " and F_" + std::to_string(o.p_));
  }
}

Fp Fp::operator+(const Fp& o) const {
  check_compatible(o);
  Fp r = *this;
  r.value_ = add(value_, o.value_, p_);
  return r;
}

Fp Fp::operator-(const Fp& o) const {
  check_compatible(o);
  Fp r = *this;
  r.value_ = sub(value_, o.value_, p_);
  return r;
}

Fp Fp::operator*(const Fp& o) const {
  check_compatible(o);
  Fp r = *this;
  r.value_ = mul(value_, o.value_, p_);
  return r;
}

Fp Fp::operator-() const {
  Fp r = *this;
  r.value_ = neg(value_, p_);
  return r;
}

Fp Fp::inverse() const {
  Fp r = *this;
  r.value_ = inv(value_, p_);
  return r;
}

Fp Fp::pow(std::int64_t k) const {
  Fp r = *this;
  if (k < 0) {
    r.value_ = gf::pow(inv(value_, p_), static_cast<std::uint64_t>(-k), p_);
  } else {
    r.value_ = gf::pow(value_, static_cast<std::uint64_t>(k), p_);
  }
  return r;
}

}  // namespace grouplaw::gf
