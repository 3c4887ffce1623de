#include "grouplaw/laws.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace grouplaw::laws {

namespace {

// order^vars as a BigInt, compared against the evaluation budget.
bool within_power_budget(const FiniteGroup& g, std::uint32_t vars,
                         std::uint64_t budget) {
  BigInt total = 1;
  for (std::uint32_t i = 0; i < vars; ++i) {
    total *= g.order();
    if (total > budget) return false;
  }
  return true;
}

}  // namespace

Elt evaluate_word(const words::GroupWord& w, const FiniteGroup& g,
                  std::span<const Elt> assignment) {
  if (w.max_var() > assignment.size()) {
    throw DomainError("word uses x" + std::to_string(w.max_var()) +
                      " but only " + std::to_string(assignment.size()) +
                      " elements were assigned");
  }
  Elt acc = g.identity();
  for (const words::Syllable& s : w.syllables()) {
    acc = g.multiply(acc, g.power(assignment[s.var - 1], s.exp));
  }
  return acc;
}

std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "holds";
    case Verdict::Refuted:
      return "refuted";
    case Verdict::NoCounterexampleFound:
      return "no-counterexample-found";
  }
  return "";
}

nlohmann::json LawCheckReport::to_json() const {
  nlohmann::json j{{"law", law},
                   {"group", group},
                   {"mode", mode},
                   {"assignments_checked", assignments_checked},
                   {"verdict", verdict_str(verdict)}};
  if (mode == "randomized") {
    j["trials"] = trials;
    j["seed"] = seed;
  }
  if (verdict == Verdict::Refuted) {
    j["counterexample"] = counterexample;
    j["counterexample_value"] = counterexample_value;
  }
  return j;
}

LawCheckReport check_law_exhaustive(const FiniteGroup& g,
                                    const words::GroupWord& w) {
  const std::uint32_t vars = w.max_var();
  if (!within_power_budget(g, vars, kExhaustiveBudget)) {
    throw BudgetError("exhaustive law check needs order^vars <= " +
                      std::to_string(kExhaustiveBudget) +
                      "; use the randomized mode");
  }
  LawCheckReport report;
  report.law = w.str();
  report.group = g.name();
  report.mode = "exhaustive";
  report.verdict = Verdict::Holds;

  const std::vector<Elt> elems = g.elements(kExhaustiveBudget);
  std::vector<std::size_t> idx(vars, 0);
  std::vector<Elt> assignment(vars, g.identity());
  while (true) {
    for (std::uint32_t v = 0; v < vars; ++v) assignment[v] = elems[idx[v]];
    ++report.assignments_checked;
    Elt value = evaluate_word(w, g, assignment);
    if (!g.is_identity(value)) {
      report.verdict = Verdict::Refuted;
      for (const Elt& e : assignment) {
        report.counterexample.push_back(g.encode(e));
      }
      report.counterexample_value = g.encode(value);
      return report;
    }
    std::size_t d = vars;
    while (d > 0) {
      --d;
      if (++idx[d] < elems.size()) break;
      idx[d] = 0;
      if (d == 0) return report;
    }
    if (vars == 0) return report;
  }
}

LawCheckReport check_law_randomized(const FiniteGroup& g,
                                    const words::GroupWord& w,
                                    std::uint64_t trials, std::uint64_t seed) {
  LawCheckReport report;
  report.law = w.str();
  report.group = g.name();
  report.mode = "randomized";
  report.trials = trials;
  report.seed = seed;
  report.verdict = Verdict::NoCounterexampleFound;

  const std::uint32_t vars = w.max_var();
  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::vector<Elt> assignment;
    assignment.reserve(vars);
    for (std::uint32_t v = 0; v < vars; ++v) assignment.push_back(g.sample(rng));
    ++report.assignments_checked;
    Elt value = evaluate_word(w, g, assignment);
    if (!g.is_identity(value)) {
      report.verdict = Verdict::Refuted;
      for (const Elt& e : assignment) {
        report.counterexample.push_back(g.encode(e));
      }
      report.counterexample_value = g.encode(value);
      return report;
    }
  }
  return report;
}

VerbalClosure verbal_closure(const FiniteGroup& g,
                             std::span<const words::GroupWord> ws) {
  if (!g.enumerable(kClosureOrderBudget)) {
    throw BudgetError("verbal closure needs group order <= " +
                      std::to_string(kClosureOrderBudget));
  }
  std::uint32_t vars = 0;
  for (const auto& w : ws) vars = std::max(vars, w.max_var());
  if (!within_power_budget(g, vars, kExhaustiveBudget)) {
    throw BudgetError("value enumeration needs order^vars <= " +
                      std::to_string(kExhaustiveBudget));
  }

  const std::vector<Elt> elems = g.elements(kClosureOrderBudget);

  // All values of all words; the value set of a word is closed under
  // conjugation, so the product closure below is automatically normal.
  std::map<std::string, Elt> values;
  values.emplace(g.encode(g.identity()), g.identity());
  for (const auto& w : ws) {
    const std::uint32_t wv = w.max_var();
    std::vector<std::size_t> idx(wv, 0);
    std::vector<Elt> assignment(wv, g.identity());
    while (true) {
      for (std::uint32_t v = 0; v < wv; ++v) assignment[v] = elems[idx[v]];
      Elt value = evaluate_word(w, g, assignment);
      values.emplace(g.encode(value), value);
      std::size_t d = wv;
      bool done = true;
      while (d > 0) {
        --d;
        if (++idx[d] < elems.size()) {
          done = false;
          break;
        }
        idx[d] = 0;
      }
      if (done) break;
    }
  }

  // Product closure; in a finite group this is the generated subgroup.
  VerbalClosure out;
  std::set<std::string> seen;
  std::vector<Elt> frontier;
  for (const auto& [key, elt] : values) {
    seen.insert(key);
    out.elements.push_back(elt);
    frontier.push_back(elt);
  }
  while (!frontier.empty()) {
    std::vector<Elt> next;
    for (const Elt& h : frontier) {
      for (const auto& [vk, v] : values) {
        Elt hv = g.multiply(h, v);
        std::string key = g.encode(hv);
        if (seen.insert(key).second) {
          out.elements.push_back(hv);
          next.push_back(std::move(hv));
        }
      }
    }
    frontier = std::move(next);
  }
  out.keys.assign(seen.begin(), seen.end());
  return out;
}

nlohmann::json MembershipReport::to_json() const {
  nlohmann::json j{{"belongs", belongs}, {"subgroup_order", subgroup_order}};
  if (!belongs) j["witness"] = witness;
  return j;
}

MembershipReport burnside_product_membership(const FiniteGroup& g,
                                             std::uint64_t m,
                                             std::uint64_t n) {
  if (m == 0 || n == 0) throw DomainError("Burnside exponents must be >= 1");
  const words::GroupWord xn =
      words::GroupWord::generator(1).pow(static_cast<std::int64_t>(n));
  std::vector<words::GroupWord> ws{xn};
  VerbalClosure closure = verbal_closure(g, ws);
  MembershipReport report;
  report.subgroup_order = closure.order();
  report.belongs = true;
  // Deterministic witness: scan in sorted-encoding order.
  std::map<std::string, const Elt*> ordered;
  for (const Elt& e : closure.elements) ordered.emplace(g.encode(e), &e);
  for (const auto& [key, elt] : ordered) {
    if (!g.is_identity(g.power(*elt, static_cast<std::int64_t>(m)))) {
      report.belongs = false;
      report.witness = key;
      break;
    }
  }
  return report;
}

nlohmann::json SchemeReport::to_json() const {
  nlohmann::json j{{"outer_m", outer_m},
                   {"inner_n", inner_n},
                   {"stabilization_index", stabilization_index},
                   {"laws_hold", laws_hold},
                   {"membership", membership},
                   {"equivalent", equivalent},
                   {"closure_consistent", closure_consistent}};
  if (first_failing_k) {
    j["first_failing_k"] = *first_failing_k;
    j["law_witness"] = law_witness;
  }
  return j;
}

SchemeReport scheme_equivalence_check(const FiniteGroup& g,
                                      std::uint64_t outer_m,
                                      std::uint64_t inner_n,
                                      std::optional<std::uint64_t> max_k) {
  if (outer_m == 0 || inner_n == 0) {
    throw DomainError("scheme exponents must be >= 1");
  }
  if (!g.enumerable(kClosureOrderBudget)) {
    throw BudgetError("scheme check needs group order <= " +
                      std::to_string(kClosureOrderBudget));
  }
  SchemeReport report;
  report.outer_m = outer_m;
  report.inner_n = inner_n;

  const std::vector<Elt> elems = g.elements(kClosureOrderBudget);

  // P_1: the n-th powers. Contains the identity, so P_k is nested in
  // P_{k+1} and "stops growing" is an equality of consecutive sets.
  std::map<std::string, Elt> p1;
  for (const Elt& e : elems) {
    Elt en = g.power(e, static_cast<std::int64_t>(inner_n));
    p1.emplace(g.encode(en), en);
  }

  // The law for index k states that every element of P_k has order dividing
  // m. Elements are checked once, as they first appear in some P_k.
  auto check_new = [&](const std::map<std::string, Elt>& fresh,
                       std::uint64_t k) {
    if (max_k && k > *max_k) return;
    for (const auto& [key, elt] : fresh) {
      if (!g.is_identity(g.power(elt, static_cast<std::int64_t>(outer_m)))) {
        if (report.laws_hold) {
          report.laws_hold = false;
          report.first_failing_k = k;
          report.law_witness = key;
        }
      }
    }
  };

  std::map<std::string, Elt> pk = p1;
  check_new(pk, 1);
  std::uint64_t k = 1;
  while (true) {
    std::map<std::string, Elt> fresh;
    for (const auto& [hk, h] : pk) {
      for (const auto& [vk, v] : p1) {
        Elt hv = g.multiply(h, v);
        std::string key = g.encode(hv);
        if (!pk.count(key) && !fresh.count(key)) fresh.emplace(key, hv);
      }
    }
    if (fresh.empty()) break;
    ++k;
    check_new(fresh, k);
    for (auto& [key, elt] : fresh) pk.emplace(key, std::move(elt));
  }
  report.stabilization_index = k;

  MembershipReport membership = burnside_product_membership(g, outer_m, inner_n);
  report.membership = membership.belongs;
  report.equivalent = (report.laws_hold == report.membership);

  // Dual route: the stabilized P_k must be exactly the verbal closure of
  // x^n computed by the BFS in burnside_product_membership.
  report.closure_consistent = (pk.size() == membership.subgroup_order);

  return report;
}

nlohmann::json CoprimeReport::to_json() const {
  return nlohmann::json{{"law_holds", law_holds},
                        {"membership", membership},
                        {"biconditional", biconditional},
                        {"law_report", law_report.to_json()},
                        {"membership_report", membership_report.to_json()}};
}

CoprimeReport coprime_single_law_check(const FiniteGroup& g, std::uint64_t m,
                                       std::uint64_t n) {
  if (std::gcd(m, n) != 1) {
    throw DomainError("coprime check requires gcd(m, n) = 1");
  }
  const words::GroupWord law = words::GroupWord::parse(
      "(x1^n x2^n)^m",
      {{"n", static_cast<std::int64_t>(n)}, {"m", static_cast<std::int64_t>(m)}});
  CoprimeReport report;
  report.law_report = check_law_exhaustive(g, law);
  report.law_holds = report.law_report.verdict == Verdict::Holds;
  report.membership_report = burnside_product_membership(g, m, n);
  report.membership = report.membership_report.belongs;
  report.biconditional = (report.law_holds == report.membership);
  return report;
}

}  // namespace grouplaw::laws
