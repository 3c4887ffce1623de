#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "grouplaw/gf.hpp"

namespace grouplaw {

// A coordinate vector in one of the m-dimensional spaces V_i over F_p.
class Vec {
public:
  Vec(std::uint32_t p, std::vector<std::uint32_t> entries);

  static Vec zero(std::uint32_t p, std::uint32_t dim);
  static Vec basis(std::uint32_t p, std::uint32_t dim, std::uint32_t i);

  std::uint32_t modulus() const { return p_; }
  std::uint32_t dim() const { return static_cast<std::uint32_t>(entries_.size()); }
  std::uint32_t operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<std::uint32_t>& entries() const { return entries_; }

  bool operator==(const Vec&) const = default;

private:
  std::uint32_t p_;
  std::vector<std::uint32_t> entries_;
};

// A dense t-linear form V^t -> F_p where every argument space has the same
// dimension d. Coefficients are stored row-major over index tuples
// (i_1,...,i_t) in [0,d)^t: the flat offset of a tuple is
// ((i_1*d + i_2)*d + ...)*d + i_t. Row-major order is normative for the
// JSON serialization and for all golden files.
class MultilinearForm {
public:
  // The zero form of the given shape.
  MultilinearForm(std::uint32_t p, std::uint32_t arity, std::uint32_t dim);
  MultilinearForm(std::uint32_t p, std::uint32_t arity, std::uint32_t dim,
                  std::vector<std::uint32_t> coeffs);

  std::uint32_t modulus() const { return p_; }
  std::uint32_t arity() const { return arity_; }
  std::uint32_t dim() const { return dim_; }
  const std::vector<std::uint32_t>& coeffs() const { return coeffs_; }

  std::uint32_t coeff_at(std::size_t flat) const { return coeffs_[flat]; }
  void set_coeff_at(std::size_t flat, std::uint32_t v);
  std::uint32_t coeff(std::span<const std::uint32_t> index) const;
  void set_coeff(std::span<const std::uint32_t> index, std::uint32_t v);

  std::size_t coeff_count() const { return coeffs_.size(); }

  // Sum over all index tuples of coeff * product of argument coordinates.
  gf::Fp evaluate(std::span<const Vec> args) const;

  MultilinearForm operator+(const MultilinearForm& o) const;
  MultilinearForm operator-(const MultilinearForm& o) const;
  MultilinearForm operator-() const;
  MultilinearForm scale(std::uint32_t c) const;
  bool is_zero() const;

  bool operator==(const MultilinearForm&) const = default;

  // Lexicographic on (p, arity, dim, coeffs); used for deterministic merges.
  bool operator<(const MultilinearForm& o) const;

  nlohmann::json to_json() const;
  static MultilinearForm from_json(const nlohmann::json& j);

  // Compact stable text key, e.g. "3:2:2:0120". Used for hashing and for
  // counterexample ordering.
  std::string key() const;

private:
  std::uint32_t p_;
  std::uint32_t arity_;
  std::uint32_t dim_;
  std::vector<std::uint32_t> coeffs_;
};

// Concatenation product: (f (x) g)(x_1..x_s, y_1..y_t) = f(x)g(y). The
// coefficient array is the outer product of the factors', row-major.
MultilinearForm tensor_concat(const MultilinearForm& f,
                              const MultilinearForm& g);

class Rng;

// Coefficients / coordinates drawn uniformly from F_p.
MultilinearForm random_form(std::uint32_t p, std::uint32_t arity,
                            std::uint32_t dim, Rng& rng);
Vec random_vec(std::uint32_t p, std::uint32_t dim, Rng& rng);

// d^t with an overflow guard; throws ShapeError beyond the dense-storage cap.
std::size_t dense_size(std::uint32_t dim, std::uint32_t arity);

}  // namespace grouplaw
