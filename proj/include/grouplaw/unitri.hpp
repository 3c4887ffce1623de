#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "grouplaw/bigint.hpp"
#include "grouplaw/forms.hpp"
#include "grouplaw/rng.hpp"

namespace grouplaw {

// Parameters of UT(l, p, m): l x l unitriangular matrices over F_p whose
// (i,j) entry is a (j-i)-linear form on m-dimensional spaces.
struct GroupParams {
  std::uint32_t p = 3;
  std::uint32_t ell = 4;
  std::uint32_t m = 1;

  void validate() const;
  bool operator==(const GroupParams&) const = default;
};

// An element of UT(l, p, m). The diagonal is implicitly 1 and everything
// below it implicitly 0; only the strictly-upper entries are stored, in
// row-major pair order (1,2), (1,3), ..., (l-1,l). The entry at (i,j) is a
// (j-i)-linear form; equality is entry-wise coefficient equality (forms are
// already canonical).
class UnitriMatrix {
public:
  static UnitriMatrix identity(const GroupParams& params);

  const GroupParams& params() const { return params_; }

  // 1-based matrix positions, 1 <= i < j <= l.
  const MultilinearForm& entry(std::uint32_t i, std::uint32_t j) const;
  void set_entry(std::uint32_t i, std::uint32_t j, MultilinearForm f);

  UnitriMatrix operator*(const UnitriMatrix& o) const;
  UnitriMatrix inverse() const;
  UnitriMatrix pow(std::uint64_t k) const;

  // Fast path for A^p when l = p+1: the result is the identity
  // except at the corner (1, p+1), which carries the concatenation product
  // of the first superdiagonal. Throws DomainError when l != p+1.
  UnitriMatrix pth_power_fast() const;

  bool is_identity() const;
  bool operator==(const UnitriMatrix&) const = default;

  // The corner entry (1, l); convenience for the p-th power bridge.
  const MultilinearForm& corner() const;

  nlohmann::json to_json() const;
  static UnitriMatrix from_json(const nlohmann::json& j);
  std::string key() const;

private:
  explicit UnitriMatrix(const GroupParams& params);

  std::size_t index_of(std::uint32_t i, std::uint32_t j) const;

  GroupParams params_;
  std::vector<MultilinearForm> entries_;
};

// |UT(l, p, m)| = p^(sum over t of (l-t) * m^t).
BigInt ut_group_order(const GroupParams& params);

// Exponent of p in the group order: the total number of coefficient slots.
std::uint64_t ut_coeff_slot_count(const GroupParams& params);

// m^p, the dimension of the arity-p form space housing the subgroup of p-th
// powers when l = p+1. Throws DomainError when l != p+1.
std::uint64_t corner_dimension(const GroupParams& params);

// Every coefficient drawn uniformly from F_p.
UnitriMatrix random_unitri(const GroupParams& params, Rng& rng);

// Visits every group element (coefficient odometer); throws BudgetError when
// the order exceeds `budget`. The callback may return false to stop early.
void ut_enumerate(const GroupParams& params, std::uint64_t budget,
                  const std::function<bool(const UnitriMatrix&)>& visit);

// Centrality of C: exhaustive when the group order is within
// `exhaustive_budget`, otherwise against `trials` seeded random elements.
bool ut_is_central(const UnitriMatrix& c, std::uint64_t trials,
                   std::uint64_t seed,
                   std::uint64_t exhaustive_budget = 200000);

// One sampled violation record: the offending matrices, serialized verbatim.
struct VerbalViolation {
  std::string kind;  // "not-central" | "order-not-p" | matching report text
  nlohmann::json witness;
};

// Sampling verification of the p-th power subgroup structure: every sampled
// C = A^p must be central of order dividing p, and some sampled C must be
// nontrivial. Counterexamples are carried verbatim, ordered by serialized
// form.
struct VerbalSubgroupReport {
  GroupParams params;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  bool exhaustive = false;
  std::uint64_t elements_checked = 0;
  bool nontrivial_power_found = false;
  std::vector<VerbalViolation> violations;
  // Distinct p-th powers seen; when exhaustive this is the full verbal
  // subgroup of p-th powers and `verbal_order` its exact order.
  std::optional<std::uint64_t> verbal_order;

  bool ok() const { return violations.empty() && nontrivial_power_found; }
  nlohmann::json to_json() const;
};

VerbalSubgroupReport verify_verbal_subgroup(const GroupParams& params,
                                            std::uint64_t trials,
                                            std::uint64_t seed);

}  // namespace grouplaw
