#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "grouplaw/groups.hpp"
#include "grouplaw/rankcert.hpp"
#include "grouplaw/words.hpp"

namespace grouplaw {

// A wr D for finite A and enumerable D: the semidirect product of the
// D-indexed direct power of A with D acting by left translation,
// (d |> f)(x) = f(d^-1 x). Elements are (function table, top) pairs with the
// table indexed by D's fixed enumeration order; that convention is normative
// for serialization.
class WreathGroup final : public FiniteGroup {
public:
  WreathGroup(GroupPtr base, GroupPtr top);

  std::string name() const override;
  BigInt order() const override;
  Elt identity() const override;
  Elt multiply(const Elt& a, const Elt& b) const override;
  Elt inverse(const Elt& a) const override;
  std::string encode(const Elt& a) const override;
  Elt sample(Rng& rng) const override;
  std::vector<Elt> generators() const override;
  void enumerate(const std::function<bool(const Elt&)>& visit) const override;

  const FiniteGroup& base_group() const { return *base_; }
  const FiniteGroup& top_group() const { return *top_; }

  // A at the identity coordinate of the base power.
  Elt embed_base(const Elt& a) const;
  // The complement copy of D.
  Elt embed_top(const Elt& d) const;
  // The canonical projection alpha onto the semidirect factor D (a
  // homomorphism whose kernel is the base power M).
  Elt project_top(const Elt& w) const;
  bool in_base(const Elt& w) const;

private:
  struct WreathElt {
    std::vector<Elt> table;
    Elt top;
  };

  GroupPtr base_;
  GroupPtr top_;
  std::vector<Elt> top_elements_;                 // fixed enumeration of D
  std::vector<std::vector<std::size_t>> shift_;   // shift_[d][x] = index of d^-1 x
  std::size_t top_identity_index_ = 0;

  std::size_t top_index(const Elt& d) const;
  static const WreathElt& get(const Elt& a);
};

std::shared_ptr<const WreathGroup> make_wreath(GroupPtr base, GroupPtr top);

// CLI group descriptors: cyclic:<n>, sym:<k>, q8, trivial, ut:<p>:<m>
// (l = p+1 implied), ut:<p>:<l>:<m>, product:<g1>x<g2>, wreath:<base>:<top>.
GroupPtr parse_group_descriptor(const std::string& descriptor);

// Searches for a homomorphism G -> D injective on S: generator images are
// tried in lexicographic order over D's enumeration, a candidate is dropped
// at its first violated multiplication relation, and the first surviving
// assignment wins (deterministic). `No` is definitive: the whole space was
// exhausted.
struct DiscriminationResult {
  rankcert::Outcome outcome = rankcert::Outcome::Inconclusive;
  std::vector<std::string> generator_images;  // encodings in D
  std::uint64_t candidates_tried = 0;
  nlohmann::json to_json() const;
};

DiscriminationResult discriminate(const FiniteGroup& g, const FiniteGroup& d,
                                  const std::vector<FiniteGroup::Elt>& s,
                                  std::uint64_t search_budget = 10000000);

// Integer functional (1, B, B^2, ..., B^(n-1)) with B = 1 + 2 * (largest
// absolute coordinate difference over S); injective on S by base-B
// positional uniqueness, and verified directly on S before returning.
struct AbelianDiscrimination {
  std::vector<BigInt> coefficients;
  std::vector<BigInt> values;  // one per input tuple, in input order
  nlohmann::json to_json() const;
};

AbelianDiscrimination discriminate_free_abelian(
    const std::vector<std::vector<std::int64_t>>& s);

// Finite shadow of the eta-construction: a free group of rank s + r with
// basis split (y_1..y_s, z_1..z_r), eps sending y_i to eps_images[i] and z_j
// to 1, and eta sending y_i to the embedded eps image and z_j onto embedded
// generators of A. Verifies alpha(eta(w)) = eps(w) on the basis and on
// seeded random words, and that eta maps sampled kernel words of eps into
// the base power M. All infinite objects of the source construction are replaced
// by finite stand-ins; reports label themselves accordingly.
struct UvShadowReport {
  std::uint32_t s = 0;
  std::uint32_t r = 0;
  std::string base;
  std::string top;
  std::uint64_t seed = 0;
  std::uint64_t alpha_eta_words_checked = 0;
  std::uint64_t kernel_words_checked = 0;
  std::uint64_t violations = 0;
  std::vector<std::string> violation_words;
  nlohmann::json to_json() const;
};

UvShadowReport uv_shadow_check(std::uint32_t s, std::uint32_t r,
                                 GroupPtr top, GroupPtr base,
                                 const std::vector<FiniteGroup::Elt>& eps_images,
                                 std::uint64_t kernel_words,
                                 std::uint64_t seed);

}  // namespace grouplaw
