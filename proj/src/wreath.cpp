#include "grouplaw/wreath.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "grouplaw/laws.hpp"

namespace grouplaw {

namespace {
constexpr std::uint64_t kTopEnumerationBudget = 4096;
constexpr std::uint64_t kGroupEnumerationBudget = 100000;
}  // namespace

WreathGroup::WreathGroup(GroupPtr base, GroupPtr top)
    : base_(std::move(base)), top_(std::move(top)) {
  if (!base_ || !top_) throw DomainError("wreath factors must be non-null");
  top_elements_ = top_->elements(kTopEnumerationBudget);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < top_elements_.size(); ++i) {
    index.emplace(top_->encode(top_elements_[i]), i);
  }
  top_identity_index_ = index.at(top_->encode(top_->identity()));
  // shift_[d][x] = index of d^-1 * x, the table permutation used by the
  // left translation action.
  shift_.resize(top_elements_.size());
  for (std::size_t d = 0; d < top_elements_.size(); ++d) {
    const Elt dinv = top_->inverse(top_elements_[d]);
    shift_[d].resize(top_elements_.size());
    for (std::size_t x = 0; x < top_elements_.size(); ++x) {
      shift_[d][x] =
          index.at(top_->encode(top_->multiply(dinv, top_elements_[x])));
    }
  }
}

const WreathGroup::WreathElt& WreathGroup::get(const Elt& a) {
  return *std::any_cast<WreathElt>(&a);
}

std::size_t WreathGroup::top_index(const Elt& d) const {
  const std::string key = top_->encode(d);
  for (std::size_t i = 0; i < top_elements_.size(); ++i) {
    if (top_->encode(top_elements_[i]) == key) return i;
  }
  throw DomainError("element does not belong to the top group");
}

std::string WreathGroup::name() const {
  return "wreath:" + base_->name() + ":" + top_->name();
}

BigInt WreathGroup::order() const {
  return bigint_pow(base_->order(), top_elements_.size()) *
         BigInt(top_elements_.size());
}

FiniteGroup::Elt WreathGroup::identity() const {
  WreathElt e{std::vector<Elt>(top_elements_.size(), base_->identity()),
              top_->identity()};
  return e;
}

FiniteGroup::Elt WreathGroup::multiply(const Elt& a, const Elt& b) const {
  const WreathElt& x = get(a);
  const WreathElt& y = get(b);
  const std::size_t d1 = top_index(x.top);
  WreathElt out{std::vector<Elt>(top_elements_.size()), Elt{}};
  for (std::size_t i = 0; i < top_elements_.size(); ++i) {
    // (f1 * (d1 |> f2))(x_i) = f1(x_i) * f2(d1^-1 x_i)
    out.table[i] = base_->multiply(x.table[i], y.table[shift_[d1][i]]);
  }
  out.top = top_->multiply(x.top, y.top);
  return out;
}

FiniteGroup::Elt WreathGroup::inverse(const Elt& a) const {
  const WreathElt& x = get(a);
  const Elt dinv = top_->inverse(x.top);
  const std::size_t dinv_index = top_index(dinv);
  WreathElt out{std::vector<Elt>(top_elements_.size()), dinv};
  for (std::size_t i = 0; i < top_elements_.size(); ++i) {
    // g(y) = f(d y)^-1, i.e. g(y_i) = f((d^-1)^-1 y_i)^-1.
    out.table[i] = base_->inverse(x.table[shift_[dinv_index][i]]);
  }
  return out;
}

std::string WreathGroup::encode(const Elt& a) const {
  const WreathElt& x = get(a);
  std::string s = "[";
  for (std::size_t i = 0; i < x.table.size(); ++i) {
    if (i > 0) s += ";";
    s += base_->encode(x.table[i]);
  }
  s += "|" + top_->encode(x.top) + "]";
  return s;
}

FiniteGroup::Elt WreathGroup::sample(Rng& rng) const {
  WreathElt out{std::vector<Elt>(top_elements_.size()), Elt{}};
  for (auto& slot : out.table) slot = base_->sample(rng);
  out.top = top_elements_[rng.below(top_elements_.size())];
  return out;
}

std::vector<FiniteGroup::Elt> WreathGroup::generators() const {
  std::vector<Elt> gens;
  for (const Elt& g : base_->generators()) gens.push_back(embed_base(g));
  for (const Elt& d : top_->generators()) gens.push_back(embed_top(d));
  return gens;
}

void WreathGroup::enumerate(
    const std::function<bool(const Elt&)>& visit) const {
  const std::vector<Elt> base_elements =
      base_->elements(kGroupEnumerationBudget);
  const std::size_t n = top_elements_.size();
  std::vector<std::size_t> digits(n, 0);
  while (true) {
    for (const Elt& top : top_elements_) {
      WreathElt e{std::vector<Elt>(n), top};
      for (std::size_t i = 0; i < n; ++i) e.table[i] = base_elements[digits[i]];
      if (!visit(Elt(e))) return;
    }
    std::size_t d = n;
    while (d > 0) {
      --d;
      if (++digits[d] < base_elements.size()) break;
      digits[d] = 0;
      if (d == 0) return;
    }
  }
}

FiniteGroup::Elt WreathGroup::embed_base(const Elt& a) const {
  WreathElt e{std::vector<Elt>(top_elements_.size(), base_->identity()),
              top_->identity()};
  e.table[top_identity_index_] = a;
  return e;
}

FiniteGroup::Elt WreathGroup::embed_top(const Elt& d) const {
  top_index(d);  // validates membership
  WreathElt e{std::vector<Elt>(top_elements_.size(), base_->identity()), d};
  return e;
}

FiniteGroup::Elt WreathGroup::project_top(const Elt& w) const {
  return get(w).top;
}

bool WreathGroup::in_base(const Elt& w) const {
  return top_->equal(get(w).top, top_->identity());
}

std::shared_ptr<const WreathGroup> make_wreath(GroupPtr base, GroupPtr top) {
  return std::make_shared<WreathGroup>(std::move(base), std::move(top));
}

// ---------------------------------------------------------------------------
// Group descriptors

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

std::uint64_t parse_number(const std::string& s) {
  if (!all_digits(s) || s.size() > 12) {
    throw DomainError("expected a number in group descriptor, got '" + s +
                      "'");
  }
  return std::stoull(s);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

GroupPtr parse_group_descriptor(const std::string& descriptor) {
  if (descriptor == "q8") return make_quaternion();
  if (descriptor == "trivial") return make_cyclic(1);
  if (descriptor.rfind("cyclic:", 0) == 0) {
    return make_cyclic(parse_number(descriptor.substr(7)));
  }
  if (descriptor.rfind("sym:", 0) == 0) {
    return make_symmetric(
        static_cast<std::uint32_t>(parse_number(descriptor.substr(4))));
  }
  if (descriptor.rfind("ut:", 0) == 0) {
    const std::vector<std::string> parts = split(descriptor.substr(3), ':');
    if (parts.size() == 2) {
      const auto p = static_cast<std::uint32_t>(parse_number(parts[0]));
      return make_unitri_group(
          {p, p + 1, static_cast<std::uint32_t>(parse_number(parts[1]))});
    }
    if (parts.size() == 3) {
      return make_unitri_group(
          {static_cast<std::uint32_t>(parse_number(parts[0])),
           static_cast<std::uint32_t>(parse_number(parts[1])),
           static_cast<std::uint32_t>(parse_number(parts[2]))});
    }
    throw DomainError("ut descriptor needs ut:<p>:<m> or ut:<p>:<l>:<m>");
  }
  if (descriptor.rfind("product:", 0) == 0) {
    const std::string rest = descriptor.substr(8);
    for (std::size_t pos = rest.find('x'); pos != std::string::npos;
         pos = rest.find('x', pos + 1)) {
      try {
        GroupPtr left = parse_group_descriptor(rest.substr(0, pos));
        GroupPtr right = parse_group_descriptor(rest.substr(pos + 1));
        return make_direct_product(std::move(left), std::move(right));
      } catch (const Error&) {
        continue;  // try the next 'x' split
      }
    }
    throw DomainError("cannot parse product descriptor '" + descriptor + "'");
  }
  if (descriptor.rfind("wreath:", 0) == 0) {
    const std::string rest = descriptor.substr(7);
    for (std::size_t pos = rest.find(':'); pos != std::string::npos;
         pos = rest.find(':', pos + 1)) {
      try {
        GroupPtr base = parse_group_descriptor(rest.substr(0, pos));
        GroupPtr top = parse_group_descriptor(rest.substr(pos + 1));
        return make_wreath(std::move(base), std::move(top));
      } catch (const Error&) {
        continue;
      }
    }
    throw DomainError("cannot parse wreath descriptor '" + descriptor + "'");
  }
  throw DomainError("unknown group descriptor '" + descriptor + "'");
}

// ---------------------------------------------------------------------------
// Discrimination

nlohmann::json DiscriminationResult::to_json() const {
  nlohmann::json j{{"outcome", rankcert::outcome_str(outcome)},
                   {"candidates_tried", candidates_tried}};
  if (outcome == rankcert::Outcome::Yes) {
    j["generator_images"] = generator_images;
  }
  return j;
}

DiscriminationResult discriminate(const FiniteGroup& g, const FiniteGroup& d,
                                  const std::vector<FiniteGroup::Elt>& s,
                                  std::uint64_t search_budget) {
  using Elt = FiniteGroup::Elt;
  DiscriminationResult result;

  const std::vector<Elt> gens = g.generators();
  const std::vector<Elt> g_elements = g.elements(kGroupEnumerationBudget);
  std::map<std::string, std::size_t> g_index;
  for (std::size_t i = 0; i < g_elements.size(); ++i) {
    g_index.emplace(g.encode(g_elements[i]), i);
  }

  // BFS spanning tree over the Cayley graph: element i != identity is
  // parent * gens[via].
  const std::size_t identity_id = g_index.at(g.encode(g.identity()));
  std::vector<std::size_t> parent(g_elements.size(), SIZE_MAX);
  std::vector<std::size_t> via(g_elements.size(), SIZE_MAX);
  std::vector<std::size_t> bfs_order{identity_id};
  std::vector<bool> seen(g_elements.size(), false);
  seen[identity_id] = true;
  for (std::size_t head = 0; head < bfs_order.size(); ++head) {
    const std::size_t u = bfs_order[head];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Elt next = g.multiply(g_elements[u], gens[k]);
      const std::size_t v = g_index.at(g.encode(next));
      if (!seen[v]) {
        seen[v] = true;
        parent[v] = u;
        via[v] = k;
        bfs_order.push_back(v);
      }
    }
  }
  if (bfs_order.size() != g_elements.size()) {
    throw DomainError("declared generators do not generate " + g.name());
  }

  // Edge table u --k--> index(u * gens[k]); verifying every edge under a
  // candidate assignment verifies the whole multiplication table.
  std::vector<std::vector<std::size_t>> edge(
      g_elements.size(), std::vector<std::size_t>(gens.size()));
  for (std::size_t u = 0; u < g_elements.size(); ++u) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      edge[u][k] = g_index.at(g.encode(g.multiply(g_elements[u], gens[k])));
    }
  }

  std::vector<std::size_t> s_ids;
  s_ids.reserve(s.size());
  for (const Elt& e : s) s_ids.push_back(g_index.at(g.encode(e)));

  const std::vector<Elt> d_elements = d.elements(kGroupEnumerationBudget);

  BigInt space = 1;
  for (std::size_t k = 0; k < gens.size(); ++k) space *= d_elements.size();
  const bool budget_ok = space <= search_budget;

  std::vector<std::size_t> assignment(gens.size(), 0);
  while (true) {
    if (!budget_ok && result.candidates_tried >= search_budget) {
      result.outcome = rankcert::Outcome::Inconclusive;
      return result;
    }
    ++result.candidates_tried;

    // Propagate along the spanning tree, then check every Cayley edge;
    // a candidate dies at its first violated relation.
    std::vector<Elt> phi(g_elements.size());
    phi[identity_id] = d.identity();
    for (std::size_t head = 1; head < bfs_order.size(); ++head) {
      const std::size_t v = bfs_order[head];
      phi[v] = d.multiply(phi[parent[v]], d_elements[assignment[via[v]]]);
    }
    bool ok = true;
    for (std::size_t u = 0; u < g_elements.size() && ok; ++u) {
      for (std::size_t k = 0; k < gens.size(); ++k) {
        if (!d.equal(phi[edge[u][k]],
                     d.multiply(phi[u], d_elements[assignment[k]]))) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      std::set<std::string> images;
      for (std::size_t id : s_ids) images.insert(d.encode(phi[id]));
      if (images.size() == s_ids.size()) {
        result.outcome = rankcert::Outcome::Yes;
        for (std::size_t k = 0; k < gens.size(); ++k) {
          result.generator_images.push_back(
              d.encode(d_elements[assignment[k]]));
        }
        return result;
      }
    }

    // Lexicographic odometer over generator images.
    std::size_t k = gens.size();
    bool done = true;
    while (k > 0) {
      --k;
      if (++assignment[k] < d_elements.size()) {
        done = false;
        break;
      }
      assignment[k] = 0;
    }
    if (done) break;
  }
  result.outcome = rankcert::Outcome::No;
  return result;
}

nlohmann::json AbelianDiscrimination::to_json() const {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const BigInt& c : coefficients) coeffs.push_back(c.str());
  nlohmann::json vals = nlohmann::json::array();
  for (const BigInt& v : values) vals.push_back(v.str());
  return nlohmann::json{{"coefficients", coeffs}, {"values", vals}};
}

AbelianDiscrimination discriminate_free_abelian(
    const std::vector<std::vector<std::int64_t>>& s) {
  if (s.empty()) throw DomainError("S must be nonempty");
  const std::size_t n = s.front().size();
  if (n == 0) throw DomainError("tuples must have rank >= 1");
  for (const auto& tuple : s) {
    if (tuple.size() != n) {
      throw ShapeError("all tuples in S must have the same rank");
    }
  }

  std::int64_t max_diff = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::int64_t lo = s[0][c], hi = s[0][c];
    for (const auto& tuple : s) {
      lo = std::min(lo, tuple[c]);
      hi = std::max(hi, tuple[c]);
    }
    max_diff = std::max(max_diff, hi - lo);
  }
  const BigInt b = 1 + 2 * BigInt(max_diff);

  AbelianDiscrimination out;
  BigInt power = 1;
  for (std::size_t c = 0; c < n; ++c) {
    out.coefficients.push_back(power);
    power *= b;
  }
  std::set<std::string> distinct_inputs, distinct_values;
  for (const auto& tuple : s) {
    BigInt v = 0;
    std::string key;
    for (std::size_t c = 0; c < n; ++c) {
      v += out.coefficients[c] * tuple[c];
      key += std::to_string(tuple[c]) + ",";
    }
    out.values.push_back(v);
    distinct_inputs.insert(key);
    distinct_values.insert(v.str());
  }
  if (distinct_values.size() != distinct_inputs.size()) {
    throw Error("internal error: base-B functional failed injectivity");
  }
  return out;
}

// ---------------------------------------------------------------------------
// The eta-construction shadow

nlohmann::json UvShadowReport::to_json() const {
  return nlohmann::json{{"s", s},
                        {"r", r},
                        {"base", base},
                        {"top", top},
                        {"seed", seed},
                        {"alpha_eta_words_checked", alpha_eta_words_checked},
                        {"kernel_words_checked", kernel_words_checked},
                        {"violations", violations},
                        {"violation_words", violation_words},
                        {"finite_shadow", true},
                        {"note",
                         "finite stand-ins replace the relatively free "
                         "groups of the source construction"}};
}

namespace {

words::GroupWord random_word(std::uint32_t rank, std::size_t max_syllables,
                             Rng& rng) {
  const std::size_t len = 1 + rng.below(max_syllables);
  std::vector<words::Syllable> syllables;
  for (std::size_t i = 0; i < len; ++i) {
    const std::uint32_t var = 1 + static_cast<std::uint32_t>(rng.below(rank));
    std::int64_t exp = static_cast<std::int64_t>(rng.below(3)) + 1;
    if (rng.below(2)) exp = -exp;
    syllables.push_back({var, exp});
  }
  return words::GroupWord::from_syllables(std::move(syllables));
}

}  // namespace

UvShadowReport uv_shadow_check(std::uint32_t s, std::uint32_t r,
                                 GroupPtr top, GroupPtr base,
                                 const std::vector<FiniteGroup::Elt>& eps_images,
                                 std::uint64_t kernel_words,
                                 std::uint64_t seed) {
  if (s < 1 || r < 1) throw DomainError("need s >= 1 and r >= 1");
  if (eps_images.size() != s) {
    throw DomainError("eps needs exactly s = " + std::to_string(s) +
                      " images");
  }
  auto w = make_wreath(base, top);
  const FiniteGroup& d = w->top_group();
  const FiniteGroup& a = w->base_group();

  UvShadowReport report;
  report.s = s;
  report.r = r;
  report.base = a.name();
  report.top = d.name();
  report.seed = seed;

  // eps on the basis: y_i -> eps_images[i], z_j -> 1. eta: y_i ->
  // embedded eps image, z_j -> embedded generators of A (cycled).
  const std::uint32_t rank = s + r;
  std::vector<FiniteGroup::Elt> eps_assignment;
  std::vector<FiniteGroup::Elt> eta_assignment;
  const std::vector<FiniteGroup::Elt> a_gens = a.generators();
  for (std::uint32_t i = 0; i < s; ++i) {
    eps_assignment.push_back(eps_images[i]);
    eta_assignment.push_back(w->embed_top(eps_images[i]));
  }
  for (std::uint32_t j = 0; j < r; ++j) {
    eps_assignment.push_back(d.identity());
    eta_assignment.push_back(
        a_gens.empty() ? w->identity()
                       : w->embed_base(a_gens[j % a_gens.size()]));
  }

  // alpha . eta = eps on the basis, then on random words.
  Rng rng(seed);
  for (std::uint32_t v = 1; v <= rank; ++v) {
    const words::GroupWord x = words::GroupWord::generator(v);
    ++report.alpha_eta_words_checked;
    if (!d.equal(w->project_top(laws::evaluate_word(x, *w, eta_assignment)),
                 laws::evaluate_word(x, d, eps_assignment))) {
      ++report.violations;
      report.violation_words.push_back(x.str());
    }
  }
  for (int i = 0; i < 200; ++i) {
    const words::GroupWord word = random_word(rank, 12, rng);
    ++report.alpha_eta_words_checked;
    if (!d.equal(
            w->project_top(laws::evaluate_word(word, *w, eta_assignment)),
            laws::evaluate_word(word, d, eps_assignment))) {
      ++report.violations;
      report.violation_words.push_back(word.str());
    }
  }

  // Kernel words: conjugates of z's (eps-trivial by construction) and
  // bounded random words filtered by evaluating eps.
  std::uint64_t produced = 0;
  std::uint64_t attempts = 0;
  const std::uint64_t max_attempts = kernel_words * 1000 + 1000;
  while (produced < kernel_words && attempts < max_attempts) {
    ++attempts;
    words::GroupWord candidate;
    if (attempts % 2 == 0) {
      // product of up to 3 conjugates u z_j^e u^-1
      const std::size_t parts = 1 + rng.below(3);
      for (std::size_t q = 0; q < parts; ++q) {
        const words::GroupWord u = random_word(rank, 4, rng);
        const std::uint32_t zvar = s + 1 + static_cast<std::uint32_t>(rng.below(r));
        const std::int64_t e = rng.below(2) ? 1 : -1;
        candidate = candidate * u * words::GroupWord::generator(zvar, e) *
                    u.inverse();
      }
    } else {
      candidate = random_word(rank, 12, rng);
    }
    if (!d.is_identity(laws::evaluate_word(candidate, d, eps_assignment))) {
      continue;  // not in ker eps
    }
    ++produced;
    ++report.kernel_words_checked;
    if (!w->in_base(laws::evaluate_word(candidate, *w, eta_assignment))) {
      ++report.violations;
      report.violation_words.push_back(candidate.str());
    }
  }
  if (produced < kernel_words) {
    throw BudgetError("could not sample enough kernel words");
  }
  return report;
}

}  // namespace grouplaw
