#pragma once

#include <any>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "grouplaw/bigint.hpp"
#include "grouplaw/error.hpp"
#include "grouplaw/rng.hpp"
#include "grouplaw/unitri.hpp"

namespace grouplaw {

// Uniform behavioral interface over the finite groups the tool works with.
// Elements are opaque values owned by their group; `encode` is canonical and
// injective, so string equality of encodings is element equality. All
// implementations are immutable and safe to share read-only.
class FiniteGroup {
public:
  using Elt = std::any;

  virtual ~FiniteGroup() = default;

  virtual std::string name() const = 0;
  virtual BigInt order() const = 0;
  virtual Elt identity() const = 0;
  virtual Elt multiply(const Elt& a, const Elt& b) const = 0;
  virtual Elt inverse(const Elt& a) const = 0;
  virtual std::string encode(const Elt& a) const = 0;
  virtual Elt sample(Rng& rng) const = 0;
  virtual std::vector<Elt> generators() const = 0;

  bool equal(const Elt& a, const Elt& b) const {
    return encode(a) == encode(b);
  }
  bool is_identity(const Elt& a) const { return equal(a, identity()); }

  Elt power(const Elt& a, std::int64_t k) const;

  bool enumerable(std::uint64_t budget) const { return order() <= budget; }

  // All elements in the group's fixed enumeration order. Throws BudgetError
  // when the order exceeds `budget`.
  std::vector<Elt> elements(std::uint64_t budget) const;

  // Streaming enumeration in the same fixed order; the callback may return
  // false to stop.
  virtual void enumerate(const std::function<bool(const Elt&)>& visit) const = 0;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr make_cyclic(std::uint64_t n);
GroupPtr make_symmetric(std::uint32_t degree);  // degree <= 5
GroupPtr make_quaternion();                     // Q_8
GroupPtr make_direct_product(GroupPtr a, GroupPtr b);
GroupPtr make_unitri_group(const GroupParams& params);

}  // namespace grouplaw
