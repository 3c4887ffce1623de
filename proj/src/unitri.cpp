#include "grouplaw/unitri.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace grouplaw {

void GroupParams::validate() const {
  gf::require_prime(p);
  if (p == 2) throw DomainError("UT(l, p, m) requires an odd prime p");
  if (ell < 2 || ell > 9) {
    throw DomainError("matrix size l must be in [2, 9], got " +
                      std::to_string(ell));
  }
  if (m < 1) throw DomainError("dimension m must be >= 1");
  // Reject shapes whose largest entry would not fit dense storage.
  dense_size(m, ell - 1);
}

UnitriMatrix::UnitriMatrix(const GroupParams& params) : params_(params) {
  params_.validate();
  entries_.reserve(static_cast<std::size_t>(params.ell) * (params.ell - 1) / 2);
  for (std::uint32_t i = 1; i < params.ell; ++i) {
    for (std::uint32_t j = i + 1; j <= params.ell; ++j) {
      entries_.emplace_back(params.p, j - i, params.m);
    }
  }
}

UnitriMatrix UnitriMatrix::identity(const GroupParams& params) {
  return UnitriMatrix(params);
}

std::size_t UnitriMatrix::index_of(std::uint32_t i, std::uint32_t j) const {
  if (i < 1 || i >= j || j > params_.ell) {
    throw ShapeError("entry position (" + std::to_string(i) + "," +
                     std::to_string(j) + ") is not strictly upper in size " +
                     std::to_string(params_.ell));
  }
  const std::size_t ell = params_.ell;
  const std::size_t row = i - 1;
  return row * ell - row * (row + 1) / 2 + (j - i - 1);
}

const MultilinearForm& UnitriMatrix::entry(std::uint32_t i,
                                           std::uint32_t j) const {
  return entries_[index_of(i, j)];
}

void UnitriMatrix::set_entry(std::uint32_t i, std::uint32_t j,
                             MultilinearForm f) {
  const std::size_t idx = index_of(i, j);
  if (f.modulus() != params_.p || f.dim() != params_.m ||
      f.arity() != j - i) {
    throw ShapeError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                     ") must be a " + std::to_string(j - i) +
                     "-linear form over F_" + std::to_string(params_.p) +
                     " on dimension " + std::to_string(params_.m));
  }
  entries_[idx] = std::move(f);
}

const MultilinearForm& UnitriMatrix::corner() const {
  return entries_[index_of(1, params_.ell)];
}

UnitriMatrix UnitriMatrix::operator*(const UnitriMatrix& o) const {
  if (!(params_ == o.params_)) {
    throw ShapeError("cannot multiply matrices from different UT(l, p, m)");
  }
  UnitriMatrix c(params_);
  for (std::uint32_t i = 1; i < params_.ell; ++i) {
    for (std::uint32_t k = i + 1; k <= params_.ell; ++k) {
      MultilinearForm acc = entry(i, k) + o.entry(i, k);
      for (std::uint32_t j = i + 1; j < k; ++j) {
        acc = acc + tensor_concat(entry(i, j), o.entry(j, k));
      }
      c.entries_[c.index_of(i, k)] = std::move(acc);
    }
  }
  return c;
}

UnitriMatrix UnitriMatrix::inverse() const {
  // (I + B)^{-1} = I - B + B^2 - ... with B the nil part; B^l = 0.
  UnitriMatrix result(params_);
  UnitriMatrix power = *this;  // entries of B^n, diagonal ignored
  int sign = -1;
  for (std::uint32_t n = 1; n < params_.ell; ++n) {
    for (std::uint32_t i = 1; i < params_.ell; ++i) {
      for (std::uint32_t k = i + 1; k <= params_.ell; ++k) {
        const MultilinearForm& term = power.entry(i, k);
        MultilinearForm& acc = result.entries_[result.index_of(i, k)];
        acc = sign > 0 ? acc + term : acc - term;
      }
    }
    if (n + 1 < params_.ell) {
      // power <- nil product power * B
      UnitriMatrix next(params_);
      for (std::uint32_t i = 1; i < params_.ell; ++i) {
        for (std::uint32_t k = i + 1; k <= params_.ell; ++k) {
          MultilinearForm acc(params_.p, k - i, params_.m);
          for (std::uint32_t j = i + 1; j < k; ++j) {
            acc = acc + tensor_concat(power.entry(i, j), entry(j, k));
          }
          next.entries_[next.index_of(i, k)] = std::move(acc);
        }
      }
      power = std::move(next);
    }
    sign = -sign;
  }
  return result;
}

UnitriMatrix UnitriMatrix::pow(std::uint64_t k) const {
  UnitriMatrix result = identity(params_);
  UnitriMatrix base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    if (k >>= 1) base = base * base;
  }
  return result;
}

UnitriMatrix UnitriMatrix::pth_power_fast() const {
  if (params_.ell != params_.p + 1) {
    throw DomainError(
        "p-th power corner formula requires l = p + 1, got l = " +
        std::to_string(params_.ell) + ", p = " + std::to_string(params_.p));
  }
  UnitriMatrix c(params_);
  MultilinearForm prod = entry(1, 2);
  for (std::uint32_t i = 2; i <= params_.p; ++i) {
    prod = tensor_concat(prod, entry(i, i + 1));
  }
  c.entries_[c.index_of(1, params_.ell)] = std::move(prod);
  return c;
}

bool UnitriMatrix::is_identity() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const MultilinearForm& f) { return f.is_zero(); });
}

nlohmann::json UnitriMatrix::to_json() const {
  nlohmann::json entries = nlohmann::json::object();
  for (std::uint32_t i = 1; i < params_.ell; ++i) {
    for (std::uint32_t j = i + 1; j <= params_.ell; ++j) {
      entries[std::to_string(i) + "," + std::to_string(j)] =
          entry(i, j).coeffs();
    }
  }
  return nlohmann::json{{"version", 1},
                        {"p", params_.p},
                        {"l", params_.ell},
                        {"m", params_.m},
                        {"entries", entries}};
}

UnitriMatrix UnitriMatrix::from_json(const nlohmann::json& j) {
  if (j.value("version", 0) != 1) {
    throw ShapeError("unsupported matrix JSON version");
  }
  GroupParams params{j.at("p").get<std::uint32_t>(),
                     j.at("l").get<std::uint32_t>(),
                     j.at("m").get<std::uint32_t>()};
  UnitriMatrix a = identity(params);
  for (std::uint32_t i = 1; i < params.ell; ++i) {
    for (std::uint32_t jj = i + 1; jj <= params.ell; ++jj) {
      const std::string key = std::to_string(i) + "," + std::to_string(jj);
      if (j.at("entries").contains(key)) {
        a.set_entry(i, jj,
                    MultilinearForm(
                        params.p, jj - i, params.m,
                        j.at("entries").at(key)
                            .get<std::vector<std::uint32_t>>()));
      }
    }
  }
  return a;
}

std::string UnitriMatrix::key() const {
  std::string s = std::to_string(params_.p) + "," +
                  std::to_string(params_.ell) + "," +
                  std::to_string(params_.m) + "|";
  for (const auto& e : entries_) {
    for (std::uint32_t c : e.coeffs()) {
      if (params_.p <= 10) {
        s.push_back(static_cast<char>('0' + c));
      } else {
        s += std::to_string(c);
        s.push_back(',');
      }
    }
    s.push_back(';');
  }
  return s;
}

std::uint64_t ut_coeff_slot_count(const GroupParams& params) {
  params.validate();
  std::uint64_t total = 0;
  std::uint64_t mt = 1;
  for (std::uint32_t t = 1; t < params.ell; ++t) {
    mt *= params.m;
    total += static_cast<std::uint64_t>(params.ell - t) * mt;
  }
  return total;
}

BigInt ut_group_order(const GroupParams& params) {
  return bigint_pow(BigInt(params.p), ut_coeff_slot_count(params));
}

std::uint64_t corner_dimension(const GroupParams& params) {
  params.validate();
  if (params.ell != params.p + 1) {
    throw DomainError("corner dimension m^p is defined for l = p + 1");
  }
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < params.p; ++i) r *= params.m;
  return r;
}

UnitriMatrix random_unitri(const GroupParams& params, Rng& rng) {
  UnitriMatrix a = UnitriMatrix::identity(params);
  for (std::uint32_t i = 1; i < params.ell; ++i) {
    for (std::uint32_t j = i + 1; j <= params.ell; ++j) {
      MultilinearForm f(params.p, j - i, params.m);
      for (std::size_t c = 0; c < f.coeff_count(); ++c) {
        f.set_coeff_at(c, static_cast<std::uint32_t>(rng.below(params.p)));
      }
      a.set_entry(i, j, std::move(f));
    }
  }
  return a;
}

void ut_enumerate(const GroupParams& params, std::uint64_t budget,
                  const std::function<bool(const UnitriMatrix&)>& visit) {
  const BigInt order = ut_group_order(params);
  if (order > budget) {
    throw BudgetError("group order " + order.str() +
                      " exceeds enumeration budget " + std::to_string(budget));
  }
  const std::uint64_t slots = ut_coeff_slot_count(params);
  std::vector<std::uint32_t> digits(slots, 0);
  while (true) {
    UnitriMatrix a = UnitriMatrix::identity(params);
    std::size_t pos = 0;
    for (std::uint32_t i = 1; i < params.ell; ++i) {
      for (std::uint32_t j = i + 1; j <= params.ell; ++j) {
        MultilinearForm f(params.p, j - i, params.m);
        for (std::size_t c = 0; c < f.coeff_count(); ++c) {
          f.set_coeff_at(c, digits[pos++]);
        }
        a.set_entry(i, j, std::move(f));
      }
    }
    if (!visit(a)) return;
    // Odometer increment, least-significant digit last.
    std::size_t d = slots;
    while (d > 0) {
      --d;
      if (++digits[d] < params.p) break;
      digits[d] = 0;
      if (d == 0) return;
    }
  }
}

bool ut_is_central(const UnitriMatrix& c, std::uint64_t trials,
                   std::uint64_t seed, std::uint64_t exhaustive_budget) {
  const GroupParams& params = c.params();
  if (ut_group_order(params) <= exhaustive_budget) {
    bool central = true;
    ut_enumerate(params, exhaustive_budget, [&](const UnitriMatrix& x) {
      if (!(c * x == x * c)) {
        central = false;
        return false;
      }
      return true;
    });
    return central;
  }
  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    UnitriMatrix x = random_unitri(params, rng);
    if (!(c * x == x * c)) return false;
  }
  return true;
}

nlohmann::json VerbalSubgroupReport::to_json() const {
  nlohmann::json v = nlohmann::json::array();
  for (const auto& viol : violations) {
    v.push_back({{"kind", viol.kind}, {"witness", viol.witness}});
  }
  nlohmann::json j{{"p", params.p},
                   {"l", params.ell},
                   {"m", params.m},
                   {"mode", exhaustive ? "exhaustive" : "randomized"},
                   {"trials", trials},
                   {"seed", seed},
                   {"elements_checked", elements_checked},
                   {"nontrivial_power_found", nontrivial_power_found},
                   {"violations", v},
                   {"ok", ok()}};
  if (verbal_order) j["verbal_subgroup_order"] = *verbal_order;
  return j;
}

namespace {

// Shared check body: C should be central, C^p = I, and C must agree with the
// square-and-multiply p-th power.
void check_power(const UnitriMatrix& a, std::uint64_t trials,
                 std::uint64_t seed, VerbalSubgroupReport& report) {
  const GroupParams& params = a.params();
  const UnitriMatrix c = a.pth_power_fast();
  if (!(c == a.pow(params.p))) {
    report.violations.push_back(
        {"fast-power-mismatch", a.to_json()});
  }
  if (!ut_is_central(c, trials, seed)) {
    report.violations.push_back({"not-central", a.to_json()});
  }
  if (!c.pow(params.p).is_identity()) {
    report.violations.push_back({"order-not-dividing-p", a.to_json()});
  }
  if (!c.is_identity()) report.nontrivial_power_found = true;
}

}  // namespace

VerbalSubgroupReport verify_verbal_subgroup(const GroupParams& params,
                                            std::uint64_t trials,
                                            std::uint64_t seed) {
  params.validate();
  if (params.ell != params.p + 1) {
    throw DomainError("verbal subgroup verification requires l = p + 1");
  }
  VerbalSubgroupReport report;
  report.params = params;
  report.trials = trials;
  report.seed = seed;

  constexpr std::uint64_t kExhaustiveBudget = 200000;
  std::set<std::string> power_keys;
  std::vector<UnitriMatrix> distinct_powers;

  if (ut_group_order(params) <= kExhaustiveBudget) {
    report.exhaustive = true;
    ut_enumerate(params, kExhaustiveBudget, [&](const UnitriMatrix& a) {
      ++report.elements_checked;
      UnitriMatrix c = a.pth_power_fast();
      if (!(c == a.pow(params.p))) {
        report.violations.push_back({"fast-power-mismatch", a.to_json()});
      }
      if (!c.is_identity()) report.nontrivial_power_found = true;
      if (power_keys.insert(c.key()).second) {
        // Centrality and order checks once per distinct power value.
        if (!ut_is_central(c, trials, seed)) {
          report.violations.push_back({"not-central", a.to_json()});
        }
        if (!c.pow(params.p).is_identity()) {
          report.violations.push_back({"order-not-dividing-p", a.to_json()});
        }
        distinct_powers.push_back(std::move(c));
      }
      return true;
    });
    // Product closure of the distinct p-th powers = the verbal subgroup
    // they generate (finite group, so inverses arrive as powers).
    std::set<std::string> closure = power_keys;
    std::vector<UnitriMatrix> frontier = distinct_powers;
    while (!frontier.empty()) {
      std::vector<UnitriMatrix> next;
      for (const auto& h : frontier) {
        for (const auto& g : distinct_powers) {
          UnitriMatrix hg = h * g;
          if (closure.insert(hg.key()).second) next.push_back(std::move(hg));
        }
      }
      frontier = std::move(next);
    }
    report.verbal_order = closure.size();
  } else {
    Rng rng(seed);
    for (std::uint64_t t = 0; t < trials; ++t) {
      ++report.elements_checked;
      UnitriMatrix a = random_unitri(params, rng);
      check_power(a, 64, seed ^ (t + 1), report);
    }
  }

  std::sort(report.violations.begin(), report.violations.end(),
            [](const VerbalViolation& x, const VerbalViolation& y) {
              return x.witness.dump() < y.witness.dump();
            });
  return report;
}

}  // namespace grouplaw
