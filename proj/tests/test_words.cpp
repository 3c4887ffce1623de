#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grouplaw/rng.hpp"
#include "grouplaw/words.hpp"

using namespace grouplaw;
using namespace grouplaw::words;

TEST_CASE("parsing the scheme words") {
  GroupWord w = GroupWord::parse("(x1^p x2^p)^p", {{"p", 3}});
  CHECK(w.length() == 18);
  CHECK(w.syllables().size() == 6);
  CHECK(w == GroupWord::parse("x1^3 x2^3 x1^3 x2^3 x1^3 x2^3"));
}

TEST_CASE("free reduction happens at parse time") {
  CHECK(GroupWord::parse("x1 x1^-1 x2") == GroupWord::generator(2));
  CHECK(GroupWord::parse("").is_trivial());
  CHECK(GroupWord::parse("x1 x2 x2^-1 x1^-1").is_trivial());
}

TEST_CASE("grammar errors carry positions") {
  CHECK_THROWS_AS(GroupWord::parse("x1^0"), ParseError);
  CHECK_THROWS_AS(GroupWord::parse("x1^p"), ParseError);         // unbound
  CHECK_THROWS_AS(GroupWord::parse("y1"), ParseError);
  CHECK_THROWS_AS(GroupWord::parse("(x1"), ParseError);
  CHECK_THROWS_AS(GroupWord::parse("x0"), ParseError);
  CHECK_THROWS_AS(GroupWord::parse("x1^"), ParseError);
  try {
    GroupWord::parse("x1 x2^0");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
}

TEST_CASE("commutator brackets") {
  GroupWord c = GroupWord::parse("[x1,x2]");
  CHECK(c == GroupWord::parse("x1^-1 x2^-1 x1 x2"));
}

TEST_CASE("exponent parameters substitute inside nesting") {
  GroupWord w = GroupWord::parse("(x1^n x2^n)^m", {{"n", 2}, {"m", -1}});
  CHECK(w == GroupWord::parse("x2^-2 x1^-2"));
}

TEST_CASE("inversion is an anti-homomorphism") {
  Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    std::vector<Syllable> a, b;
    for (int k = 0; k < 4; ++k) {
      a.push_back({1 + static_cast<std::uint32_t>(rng.below(3)),
                   static_cast<std::int64_t>(rng.below(5)) - 2});
      b.push_back({1 + static_cast<std::uint32_t>(rng.below(3)),
                   static_cast<std::int64_t>(rng.below(5)) - 2});
    }
    GroupWord w1 = GroupWord::from_syllables(a);
    GroupWord w2 = GroupWord::from_syllables(b);
    CHECK((w1 * w2).inverse() == w2.inverse() * w1.inverse());
    CHECK((w1 * w1.inverse()).is_trivial());
  }
}

TEST_CASE("cyclic reduction and conjugacy") {
  CHECK(GroupWord::parse("x1 x2 x1^-1").cyclic_reduce() ==
        GroupWord::generator(2));
  CHECK(conjugate_test(GroupWord::parse("x1 x2"), GroupWord::parse("x2 x1")));
  CHECK_FALSE(conjugate_test(GroupWord::parse("x1 x2"),
                             GroupWord::parse("x1 x2^-1")));
  CHECK(conjugate_test(GroupWord::parse("x1^3 x2 x1^-3"),
                       GroupWord::parse("x2")));
  CHECK(conjugate_test(GroupWord::one(), GroupWord::one()));
}

TEST_CASE("length never increases under products with inverse parts") {
  // normalization is idempotent: re-normalizing syllables changes nothing
  Rng rng(6);
  for (int i = 0; i < 50; ++i) {
    std::vector<Syllable> raw;
    for (int k = 0; k < 6; ++k) {
      std::int64_t e = static_cast<std::int64_t>(rng.below(7)) - 3;
      raw.push_back({1 + static_cast<std::uint32_t>(rng.below(2)), e});
    }
    GroupWord w = GroupWord::from_syllables(raw);
    CHECK(GroupWord::from_syllables(w.syllables()) == w);
    std::uint64_t raw_len = 0;
    for (const auto& s : raw) raw_len += static_cast<std::uint64_t>(s.exp < 0 ? -s.exp : s.exp);
    CHECK(w.length() <= raw_len);
  }
}

TEST_CASE("nielsen: one elementary move") {
  NielsenResult res = nielsen_reduce(
      {GroupWord::parse("x1 x2"), GroupWord::parse("x2")});
  CHECK(res.tuple ==
        std::vector<GroupWord>{GroupWord::generator(1), GroupWord::generator(2)});
  CHECK(res.trivial.empty());
  // the log replays to the output
  CHECK(apply_moves({GroupWord::parse("x1 x2"), GroupWord::parse("x2")},
                    res.log) == res.tuple);
}

TEST_CASE("nielsen: duplicate generator leaves a flagged trivial slot") {
  NielsenResult res =
      nielsen_reduce({GroupWord::generator(1), GroupWord::generator(1)});
  REQUIRE(res.tuple.size() == 2);
  CHECK(res.tuple[0] == GroupWord::generator(1));
  CHECK(res.tuple[1].is_trivial());
  CHECK(res.trivial == std::vector<std::size_t>{1});
}

TEST_CASE("nielsen: conjugate tuple reduces and keeps its subgroup") {
  std::vector<GroupWord> input{GroupWord::parse("x2"),
                               GroupWord::parse("x1 x2 x1^-1"),
                               GroupWord::parse("x1")};
  NielsenResult res = nielsen_reduce(input);
  // all inputs are members of the reduced subgroup
  for (const GroupWord& w : input) {
    CHECK(member_of_reduced(w, res.tuple));
  }
  // and vice versa via the replayed log
  CHECK(apply_moves(input, res.log) == res.tuple);
  // this tuple generates all of F_2, so reduction finds the basis
  CHECK(is_basis(input, 2) == false);  // 3 entries, rank 2
  std::vector<GroupWord> nontrivial;
  for (const auto& w : res.tuple) {
    if (!w.is_trivial()) nontrivial.push_back(w);
  }
  CHECK(nontrivial ==
        std::vector<GroupWord>{GroupWord::generator(1), GroupWord::generator(2)});
}

TEST_CASE("membership: greedy rewriting over a reduced tuple") {
  std::vector<GroupWord> tuple{GroupWord::parse("x1^2"), GroupWord::parse("x2")};
  CHECK(member_of_reduced(GroupWord::parse("x1^4 x2"), tuple));
  CHECK(member_of_reduced(GroupWord::parse("x2^-1 x1^2 x2"), tuple));
  CHECK_FALSE(member_of_reduced(GroupWord::parse("x1"), tuple));
  CHECK_FALSE(member_of_reduced(GroupWord::parse("x1^3"), tuple));
  CHECK(member_of_reduced(GroupWord::one(), tuple));
}

TEST_CASE("is_basis: examples") {
  CHECK(is_basis({GroupWord::parse("x1 x2"), GroupWord::parse("x2")}, 2));
  CHECK_FALSE(is_basis({GroupWord::parse("x1^2"), GroupWord::parse("x2")}, 2));
  CHECK(is_basis({GroupWord::generator(1)}, 1));
  CHECK_FALSE(is_basis({GroupWord::generator(1), GroupWord::generator(1)}, 2));
  CHECK_THROWS_AS(is_basis({GroupWord::parse("x3")}, 2), DomainError);
}

TEST_CASE("is_basis: 50 seeded tuples from standard bases by 30 moves") {
  Rng rng(101);
  for (int rep = 0; rep < 50; ++rep) {
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(4));
    std::vector<GroupWord> basis;
    for (std::uint32_t v = 1; v <= n; ++v) basis.push_back(GroupWord::generator(v));
    std::vector<GroupWord> scrambled = random_nielsen_moves(basis, 30, rng);
    CHECK(is_basis(scrambled, n));
  }
}

TEST_CASE("is_basis verdict is invariant under random elementary moves") {
  Rng rng(103);
  const std::vector<std::vector<GroupWord>> seeds{
      {GroupWord::parse("x1^2"), GroupWord::parse("x2")},
      {GroupWord::parse("x1"), GroupWord::parse("x2")},
      {GroupWord::parse("x1 x2 x1"), GroupWord::parse("x2")},
  };
  for (const auto& seed : seeds) {
    const bool expected = is_basis(seed, 2);
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<GroupWord> moved = random_nielsen_moves(seed, 12, rng);
      CHECK(is_basis(moved, 2) == expected);
    }
  }
}

TEST_CASE("nielsen reduction preserves membership both ways on random tuples") {
  Rng rng(107);
  for (int rep = 0; rep < 25; ++rep) {
    std::vector<GroupWord> tuple;
    const std::size_t k = 2 + rng.below(2);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Syllable> syl;
      const std::size_t len = 1 + rng.below(3);
      for (std::size_t q = 0; q < len; ++q) {
        syl.push_back({1 + static_cast<std::uint32_t>(rng.below(3)),
                       static_cast<std::int64_t>(rng.below(4)) - 2});
      }
      tuple.push_back(GroupWord::from_syllables(syl));
    }
    NielsenResult res = nielsen_reduce(tuple);
    CHECK(apply_moves(tuple, res.log) == res.tuple);
    for (const GroupWord& w : tuple) {
      CHECK(member_of_reduced(w, res.tuple));
    }
  }
}
