#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grouplaw/error.hpp"

namespace grouplaw::words {

// One run x_v^e of a free-group word; e != 0, and adjacent syllables of a
// normalized word carry distinct variables.
struct Syllable {
  std::uint32_t var;  // 1-based variable index
  std::int64_t exp;

  bool operator==(const Syllable&) const = default;
  auto operator<=>(const Syllable&) const = default;
};

// A freely reduced word over x1, x2, ... Value type; always normalized.
class GroupWord {
public:
  GroupWord() = default;

  static GroupWord one() { return GroupWord(); }
  static GroupWord generator(std::uint32_t var, std::int64_t exp = 1);
  static GroupWord from_syllables(std::vector<Syllable> syllables);

  // Grammar: variables `x<k>`, exponents via `^` (integers or parameter
  // names bound through `params`), parentheses, commutator brackets
  // `[w1,w2]`, implicit concatenation, whitespace ignored.
  static GroupWord parse(std::string_view text,
                         const std::map<std::string, std::int64_t>& params = {});

  const std::vector<Syllable>& syllables() const { return syllables_; }
  bool is_trivial() const { return syllables_.empty(); }

  // Letter count, i.e. the sum of |exp| over syllables.
  std::uint64_t length() const;
  std::uint32_t max_var() const;

  GroupWord operator*(const GroupWord& o) const;
  GroupWord inverse() const;
  GroupWord pow(std::int64_t k) const;
  GroupWord cyclic_reduce() const;

  // Expansion into single letters: +v for x_v, -v for x_v^{-1}.
  std::vector<std::int32_t> letters() const;
  static GroupWord from_letters(const std::vector<std::int32_t>& letters);

  std::string str() const;

  bool operator==(const GroupWord&) const = default;
  // Total length first, then lexicographic on syllables; the deterministic
  // order used by Nielsen reduction and report serialization.
  bool operator<(const GroupWord& o) const;

private:
  std::vector<Syllable> syllables_;
};

// True iff w1 and w2 are conjugate in the free group: their cyclic
// reductions agree up to rotation.
bool conjugate_test(const GroupWord& w1, const GroupWord& w2);

// Elementary Nielsen transformations, recorded for replay.
struct NielsenMove {
  enum class Kind { Invert, MulRight, MulLeft, Swap } kind;
  std::size_t i = 0;  // the entry replaced / first swap index
  std::size_t j = 0;  // the other operand (MulRight/MulLeft/Swap)
  int sign = 1;       // exponent on w_j for the multiplication moves

  std::string str() const;
};

struct NielsenResult {
  std::vector<GroupWord> tuple;      // reduced tuple, trivial slots kept
  std::vector<NielsenMove> log;      // replaying on the input gives `tuple`
  std::vector<std::size_t> trivial;  // indices of trivial members
};

// Nielsen reduction: repeatedly applies the elementary move that shrinks the
// tuple in the (total length, lexicographic syllables) order, then orients
// and sorts. The generated subgroup is preserved move by move.
NielsenResult nielsen_reduce(std::vector<GroupWord> tuple);

// Replays a move log; used to validate that the log reproduces the output.
std::vector<GroupWord> apply_moves(std::vector<GroupWord> tuple,
                                   const std::vector<NielsenMove>& log);

// Membership of `w` in the subgroup generated by a Nielsen-reduced tuple,
// by greedy prefix rewriting (peeling generators that shorten the word,
// with backtracking over equal-length ties).
bool member_of_reduced(const GroupWord& w, const std::vector<GroupWord>& tuple);

// True iff the tuple reduces to exactly (x1, ..., xn) up to inversion and
// reordering. Every variable index must be <= n.
bool is_basis(const std::vector<GroupWord>& tuple, std::uint32_t rank);

}  // namespace grouplaw::words

namespace grouplaw {
class Rng;
namespace words {

// Applies `count` seeded random elementary moves (invert / multiply); used
// by the basis property suites.
std::vector<GroupWord> random_nielsen_moves(std::vector<GroupWord> tuple,
                                            std::size_t count,
                                            grouplaw::Rng& rng);

}  // namespace words
}  // namespace grouplaw
