#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace grouplaw {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt bigint_pow(const BigInt& base, std::uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1) result *= b;
    b *= b;
    exp >>= 1;
  }
  return result;
}

}  // namespace grouplaw
