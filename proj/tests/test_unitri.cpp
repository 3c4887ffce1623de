#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "grouplaw/unitri.hpp"

using namespace grouplaw;

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((GroupParams{2, 3, 1}.validate()), DomainError);  // even p
  CHECK_THROWS_AS((GroupParams{9, 4, 1}.validate()), DomainError);  // composite
  CHECK_THROWS_AS((GroupParams{3, 1, 1}.validate()), DomainError);  // l small
  CHECK_THROWS_AS((GroupParams{3, 4, 0}.validate()), DomainError);  // m = 0
  CHECK_NOTHROW((GroupParams{3, 4, 2}.validate()));
  CHECK_NOTHROW((GroupParams{5, 6, 1}.validate()));
}

TEST_CASE("identity laws") {
  GroupParams params{3, 4, 2};
  UnitriMatrix id = UnitriMatrix::identity(params);
  CHECK(id.is_identity());
  CHECK(id.pow(3) == id);
  Rng rng(17);
  for (int i = 0; i < 50; ++i) {
    UnitriMatrix a = random_unitri(params, rng);
    CHECK(id * a == a);
    CHECK(a * id == a);
  }
}

TEST_CASE("identity serializes with all-zero entry slots") {
  UnitriMatrix id = UnitriMatrix::identity({3, 4, 2});
  auto j = id.to_json();
  CHECK(j["entries"].size() == 6);
  for (auto& [k, v] : j["entries"].items()) {
    for (auto c : v) CHECK(c == 0);
  }
}

TEST_CASE("hand-expanded product at l = 3") {
  GroupParams params{3, 3, 2};
  Rng rng(23);
  MultilinearForm u = random_form(3, 1, 2, rng);
  MultilinearForm v = random_form(3, 1, 2, rng);
  UnitriMatrix a = UnitriMatrix::identity(params);
  a.set_entry(1, 2, u);
  a.set_entry(2, 3, v);
  UnitriMatrix sq = a * a;
  CHECK(sq.entry(1, 3) == tensor_concat(u, v));
  CHECK(sq.entry(1, 2) == u + u);
  CHECK(sq.entry(2, 3) == v + v);
}

TEST_CASE("associativity on seeded triples") {
  for (GroupParams params : {GroupParams{3, 4, 2}, GroupParams{3, 4, 3},
                             GroupParams{5, 6, 1}, GroupParams{5, 4, 2}}) {
    Rng rng(29);
    for (int i = 0; i < 50; ++i) {
      UnitriMatrix a = random_unitri(params, rng);
      UnitriMatrix b = random_unitri(params, rng);
      UnitriMatrix c = random_unitri(params, rng);
      CHECK((a * b) * c == a * (b * c));
    }
  }
}

TEST_CASE("params mismatch rejected") {
  UnitriMatrix a = UnitriMatrix::identity({3, 4, 1});
  UnitriMatrix b = UnitriMatrix::identity({3, 4, 2});
  CHECK_THROWS_AS(a * b, ShapeError);
}

TEST_CASE("inverse via the alternating series") {
  GroupParams params{3, 3, 2};
  Rng rng(31);
  MultilinearForm u = random_form(3, 1, 2, rng);
  MultilinearForm v = random_form(3, 1, 2, rng);
  UnitriMatrix a = UnitriMatrix::identity(params);
  a.set_entry(1, 2, u);
  a.set_entry(2, 3, v);
  UnitriMatrix inv = a.inverse();
  CHECK(inv.entry(1, 2) == -u);
  CHECK(inv.entry(2, 3) == -v);
  CHECK(inv.entry(1, 3) == tensor_concat(u, v));
  CHECK((a * inv).is_identity());
  CHECK((inv * a).is_identity());
}

TEST_CASE("inverse laws on seeded samples") {
  for (GroupParams params : {GroupParams{3, 4, 2}, GroupParams{3, 4, 3},
                             GroupParams{5, 6, 1}}) {
    UnitriMatrix id = UnitriMatrix::identity(params);
    CHECK(id.inverse() == id);
    Rng rng(37);
    for (int i = 0; i < 30; ++i) {
      UnitriMatrix a = random_unitri(params, rng);
      CHECK((a * a.inverse()).is_identity());
      CHECK(a.inverse().inverse() == a);
    }
  }
}

TEST_CASE("power basics") {
  GroupParams params{3, 4, 2};
  Rng rng(41);
  UnitriMatrix a = random_unitri(params, rng);
  CHECK(a.pow(0).is_identity());
  CHECK(a.pow(1) == a);
  CHECK(a.pow(2) == a * a);
  CHECK(a.pow(5) == a * a * a * a * a);
}

TEST_CASE("group exponent divides p^2 when l = p + 1") {
  for (GroupParams params : {GroupParams{3, 4, 1}, GroupParams{3, 4, 2}}) {
    Rng rng(43);
    for (int i = 0; i < 20; ++i) {
      UnitriMatrix a = random_unitri(params, rng);
      CHECK(a.pow(params.p * params.p).is_identity());
    }
  }
}

TEST_CASE("fast p-th power: single-coefficient case at p=3, m=1") {
  GroupParams params{3, 4, 1};
  Rng rng(47);
  UnitriMatrix a = random_unitri(params, rng);
  // Superdiagonal all ones, higher entries arbitrary (kept from random).
  for (std::uint32_t i = 1; i < 4; ++i) {
    a.set_entry(i, i + 1, MultilinearForm(3, 1, 1, {1}));
  }
  UnitriMatrix c = a.pth_power_fast();
  CHECK(c.corner() == MultilinearForm(3, 3, 1, {1}));
  CHECK(c == a.pow(3));
  for (std::uint32_t i = 1; i < 4; ++i) {
    for (std::uint32_t j = i + 1; j <= 4; ++j) {
      if (i == 1 && j == 4) continue;
      CHECK(c.entry(i, j).is_zero());
    }
  }
}

TEST_CASE("fast p-th power equals repeated multiplication on seeded samples") {
  for (GroupParams params : {GroupParams{3, 4, 2}, GroupParams{5, 6, 1}}) {
    Rng rng(53);
    for (int i = 0; i < 200; ++i) {
      UnitriMatrix a = random_unitri(params, rng);
      CHECK(a.pth_power_fast() == a.pow(params.p));
    }
  }
  UnitriMatrix id = UnitriMatrix::identity({3, 4, 1});
  CHECK(id.pth_power_fast() == id);
}

TEST_CASE("fast p-th power exhaustive at (p=3, l=4, m=1)") {
  GroupParams params{3, 4, 1};
  ut_enumerate(params, 1000, [](const UnitriMatrix& a) {
    CHECK(a.pth_power_fast() == a.pow(3));
    return true;
  });
}

TEST_CASE("fast p-th power requires l = p + 1") {
  UnitriMatrix a = UnitriMatrix::identity({3, 3, 1});
  CHECK_THROWS_AS(a.pth_power_fast(), DomainError);
}

TEST_CASE("group order formula") {
  CHECK(ut_group_order({3, 4, 1}) == 729);
  CHECK(ut_group_order({3, 2, 1}) == 3);
  CHECK(ut_group_order({3, 4, 2}) == bigint_pow(BigInt(3), 22));
  // Slot count cross-check: (l-1) entries of arity 1 with m coeffs, etc.
  CHECK(ut_coeff_slot_count({3, 4, 2}) == 3 * 2 + 2 * 4 + 1 * 8);
}

TEST_CASE("enumeration matches the order for m = 1") {
  std::set<std::string> keys;
  ut_enumerate({3, 4, 1}, 1000, [&](const UnitriMatrix& a) {
    keys.insert(a.key());
    return true;
  });
  CHECK(keys.size() == 729);
  CHECK_THROWS_AS(ut_enumerate({3, 4, 2}, 1000,
                               [](const UnitriMatrix&) { return true; }),
                  BudgetError);
}

TEST_CASE("corner dimension m^p") {
  CHECK(corner_dimension({3, 4, 2}) == 8);
  CHECK(corner_dimension({3, 4, 1}) == 1);
  CHECK(corner_dimension({3, 4, 4}) == 64);
  CHECK_THROWS_AS(corner_dimension({3, 3, 2}), DomainError);
}

TEST_CASE("corner-only matrices are central of order dividing p") {
  GroupParams params{3, 4, 2};
  Rng rng(59);
  for (int i = 0; i < 10; ++i) {
    UnitriMatrix c = UnitriMatrix::identity(params);
    MultilinearForm corner = random_form(3, 3, 2, rng);
    c.set_entry(1, 4, corner);
    CHECK(c.pow(3).is_identity());
    CHECK(ut_is_central(c, 40, 1234 + i));
    // exact structure: C X = X C = X with the corner form added on top
    for (int k = 0; k < 5; ++k) {
      UnitriMatrix x = random_unitri(params, rng);
      UnitriMatrix expect = x;
      expect.set_entry(1, 4, x.entry(1, 4) + corner);
      CHECK(c * x == expect);
      CHECK(x * c == expect);
    }
  }
  CHECK(ut_is_central(UnitriMatrix::identity(params), 10, 7));
}

TEST_CASE("product of fast p-th powers sums the corner forms") {
  GroupParams params{3, 4, 2};
  Rng rng(61);
  for (int rep = 0; rep < 25; ++rep) {
    const int r = 1 + static_cast<int>(rng.below(4));
    UnitriMatrix prod = UnitriMatrix::identity(params);
    MultilinearForm corner_sum(3, 3, 2);
    for (int i = 0; i < r; ++i) {
      UnitriMatrix a = random_unitri(params, rng);
      prod = prod * a.pth_power_fast();
      corner_sum = corner_sum + a.pth_power_fast().corner();
    }
    CHECK(prod.corner() == corner_sum);
    UnitriMatrix expect = UnitriMatrix::identity(params);
    expect.set_entry(1, 4, corner_sum);
    CHECK(prod == expect);
  }
}

TEST_CASE("verbal subgroup verification, exhaustive at (3, 4, 1)") {
  VerbalSubgroupReport report = verify_verbal_subgroup({3, 4, 1}, 50, 7);
  CHECK(report.exhaustive);
  CHECK(report.elements_checked == 729);
  CHECK(report.ok());
  REQUIRE(report.verbal_order.has_value());
  CHECK(*report.verbal_order == 3);  // p^(m^p) with m = 1
}

TEST_CASE("verbal subgroup verification, sampled at (3, 4, 2)") {
  VerbalSubgroupReport report = verify_verbal_subgroup({3, 4, 2}, 60, 99);
  CHECK_FALSE(report.exhaustive);
  CHECK(report.ok());
  CHECK_FALSE(report.verbal_order.has_value());
}

TEST_CASE("matrix JSON round-trip") {
  GroupParams params{3, 4, 2};
  Rng rng(67);
  UnitriMatrix a = random_unitri(params, rng);
  CHECK(UnitriMatrix::from_json(a.to_json()) == a);
  auto j = a.to_json();
  CHECK(j["version"] == 1);
  std::vector<std::string> keys;
  for (auto& [k, v] : j["entries"].items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"1,2", "1,3", "1,4", "2,3", "2,4",
                                         "3,4"});
}
