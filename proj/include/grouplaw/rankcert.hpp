#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "grouplaw/bigint.hpp"
#include "grouplaw/forms.hpp"
#include "grouplaw/unitri.hpp"

namespace grouplaw::rankcert {

// Search parameters: forms of arity t on d-dimensional spaces over F_p,
// against a budget of r decomposable summands. The group construction
// couples t = p and d = r = m; the searches here decouple them.
struct RankSearchParams {
  std::uint32_t p = 3;
  std::uint32_t arity = 3;
  std::uint32_t dim = 2;
  std::uint32_t count = 2;  // r, the summand budget

  void validate() const;
  bool operator==(const RankSearchParams&) const = default;
};

// Every nonzero decomposable (rank-1) form u_1 (x) ... (x) u_t exactly once:
// factors 2..t are normalized projectively (first nonzero coordinate 1), the
// leading factor ranges over all nonzero vectors. Deterministic order.
std::vector<MultilinearForm> enumerate_rank1(std::uint32_t p,
                                             std::uint32_t arity,
                                             std::uint32_t dim);

// Expected size of enumerate_rank1: (p^d - 1)^t / (p-1)^(t-1).
BigInt rank1_count(std::uint32_t p, std::uint32_t arity, std::uint32_t dim);

enum class Outcome { Yes, No, Inconclusive };

std::string outcome_str(Outcome o);

struct SumSearchResult {
  Outcome outcome = Outcome::Inconclusive;
  std::vector<MultilinearForm> witness;  // summands, present when Yes
  std::uint64_t nodes_visited = 0;
};

struct SumSearchOptions {
  std::uint64_t node_budget = 50000000;
  bool use_flattening_pruning = true;
};

// Is T a sum of at most r nonzero decomposables? Exhaustive DFS over
// decomposable combinations with flattening-rank pruning; witnesses are
// re-verified by summation before being returned. A blown budget yields
// Inconclusive, never a silent No.
SumSearchResult is_sum_of_rank1(const MultilinearForm& t, std::uint32_t r,
                                const SumSearchOptions& opts = {});

// Variant reusing a precomputed decomposable list (must match T's shape).
SumSearchResult is_sum_of_rank1(const MultilinearForm& t, std::uint32_t r,
                                const std::vector<MultilinearForm>& rank1,
                                const SumSearchOptions& opts);

struct RankResult {
  Outcome outcome = Outcome::Inconclusive;
  std::uint32_t rank = 0;  // valid when outcome == Yes
  std::uint64_t nodes_visited = 0;
};

// Least r with is_sum_of_rank1(T, r) = Yes, by increasing r. Rank of a
// t-linear form on dimension d is at most d^(t-1).
RankResult brute_rank(const MultilinearForm& t,
                      const SumSearchOptions& opts = {});

// Matrix rank over F_p of the axis-a flattening (d x d^(t-1)); the maximum
// over axes is a lower bound on tensor rank.
std::uint32_t flattening_rank(const MultilinearForm& t, std::uint32_t axis);
std::uint32_t max_flattening_rank(const MultilinearForm& t);

// A verified claim that every nonzero multiple of `generator` needs more
// than `params.count` decomposable summands.
struct RankCertificate {
  RankSearchParams params;
  MultilinearForm generator;
  std::string method;  // "exhaustive-sums" | "dfs-with-pruning"
  std::uint64_t lines_scanned = 0;
  std::uint64_t nodes_visited = 0;
  std::string hash;  // content hash of parameters and generator

  nlohmann::json to_json() const;
  static RankCertificate from_json(const nlohmann::json& j);
};

std::string certificate_hash(const RankSearchParams& params,
                             const MultilinearForm& generator);

struct FindLineResult {
  Outcome outcome = Outcome::Inconclusive;  // Yes: found; No: none exists
  std::optional<RankCertificate> certificate;
  std::uint64_t lines_scanned = 0;
  std::uint64_t nodes_visited = 0;
};

// Scans all lines (projective classes) of the form space for one whose
// nonzero multiples all exceed the summand budget; scanning is partitioned
// across `threads` workers by leading index and merged deterministically
// (lowest qualifying line wins). Certificates re-verify before return.
FindLineResult find_avoiding_line(const RankSearchParams& params,
                                  unsigned threads = 1,
                                  const SumSearchOptions& opts = {});

// Re-runs the certificate's claim: every nonzero multiple of the generator
// fails is_sum_of_rank1 at the certified budget, and the hash matches.
bool verify_certificate(const RankCertificate& cert,
                        const SumSearchOptions& opts = {});

// Exact comparison (p^(m^p) - 1)/(p - 1) > p^(p m^2) in integers.
struct CountingInequality {
  bool holds = false;
  BigInt lhs;
  BigInt rhs;
  nlohmann::json to_json() const;
};

CountingInequality counting_inequality(std::uint32_t p, std::uint32_t m);

// Samples r-tuples in UT(p+1, p, m), multiplies their fast p-th powers, and
// checks the corner never lands on a nonzero multiple of the certificate's
// generator; also re-checks the corner equals the sum of the tuple's corner
// forms. Violations carry the full tuple.
struct ShadowReport {
  std::uint32_t p = 0;
  std::uint32_t m_dim = 0;
  std::uint32_t count = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t violations = 0;
  std::vector<nlohmann::json> violation_tuples;
  nlohmann::json to_json() const;
};

ShadowReport group_shadow_check(std::uint32_t p, std::uint32_t m_dim,
                                std::uint32_t count, std::uint64_t trials,
                                std::uint64_t seed,
                                const RankCertificate& cert);

}  // namespace grouplaw::rankcert
