#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "grouplaw/groups.hpp"
#include "grouplaw/words.hpp"

namespace grouplaw::laws {

using Elt = FiniteGroup::Elt;

// Budget for exhaustive sweeps: order^(#variables) evaluations.
inline constexpr std::uint64_t kExhaustiveBudget = 10000000;
// Budget on the group order for verbal-closure computations.
inline constexpr std::uint64_t kClosureOrderBudget = 100000;

// The image of w under the homomorphism sending x_i to assignment[i-1].
// Throws DomainError when the assignment does not cover all variables.
Elt evaluate_word(const words::GroupWord& w, const FiniteGroup& g,
                  std::span<const Elt> assignment);

enum class Verdict { Holds, Refuted, NoCounterexampleFound };

std::string verdict_str(Verdict v);

struct LawCheckReport {
  std::string law;
  std::string group;
  std::string mode;  // "exhaustive" | "randomized"
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t assignments_checked = 0;
  Verdict verdict = Verdict::Holds;
  std::vector<std::string> counterexample;  // assignment encodings
  std::string counterexample_value;         // encoding of the word's value

  bool refuted() const { return verdict == Verdict::Refuted; }
  nlohmann::json to_json() const;
};

// Definitive sweep over all assignments; requires order^vars within budget
// (throws BudgetError pointing to randomized mode otherwise). The
// counterexample, if any, is the first in enumeration order.
LawCheckReport check_law_exhaustive(const FiniteGroup& g,
                                    const words::GroupWord& w);

LawCheckReport check_law_randomized(const FiniteGroup& g,
                                    const words::GroupWord& w,
                                    std::uint64_t trials, std::uint64_t seed);

// The verbal subgroup generated by all values of the given words: value
// collection over all assignments, then product closure. Requires an
// enumerable group within the closure budgets.
struct VerbalClosure {
  std::vector<Elt> elements;        // insertion (BFS) order
  std::vector<std::string> keys;    // sorted encodings
  std::uint64_t order() const { return elements.size(); }
};

VerbalClosure verbal_closure(const FiniteGroup& g,
                             std::span<const words::GroupWord> ws);

// Is G in B_m * B_n, i.e. does the subgroup generated by n-th powers have
// exponent dividing m?
struct MembershipReport {
  bool belongs = false;
  std::uint64_t subgroup_order = 0;
  std::string witness;  // offending element when belongs == false
  nlohmann::json to_json() const;
};

MembershipReport burnside_product_membership(const FiniteGroup& g,
                                             std::uint64_t m, std::uint64_t n);

// Per-group equivalence of the identity scheme (x_1^n ... x_k^n)^m = 1
// (k = 1, 2, ...) with membership in B_m * B_n. P_k is the set of k-fold
// products of n-th powers; since the identity is an n-th power the P_k are
// nested, and they stabilize at the subgroup those powers generate.
struct SchemeReport {
  std::uint64_t outer_m = 0;
  std::uint64_t inner_n = 0;
  std::uint64_t stabilization_index = 0;
  bool laws_hold = true;
  std::optional<std::uint64_t> first_failing_k;
  std::string law_witness;  // element of P_k with order not dividing m
  bool membership = false;
  bool equivalent = false;  // laws_hold == membership, asserted group by group
  bool closure_consistent = false;  // P_stab equals the verbal closure
  nlohmann::json to_json() const;
};

SchemeReport scheme_equivalence_check(
    const FiniteGroup& g, std::uint64_t outer_m, std::uint64_t inner_n,
    std::optional<std::uint64_t> max_k = std::nullopt);

// gcd(m, n) = 1: checks the biconditional "G satisfies (x1^n x2^n)^m = 1
// iff G is in B_m * B_n" for this finite group.
struct CoprimeReport {
  bool law_holds = false;
  bool membership = false;
  bool biconditional = false;
  LawCheckReport law_report;
  MembershipReport membership_report;
  nlohmann::json to_json() const;
};

CoprimeReport coprime_single_law_check(const FiniteGroup& g, std::uint64_t m,
                                       std::uint64_t n);

}  // namespace grouplaw::laws
