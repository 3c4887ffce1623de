#include "grouplaw/rankcert.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>

namespace grouplaw::rankcert {

namespace {

constexpr std::size_t kRank1Cap = std::size_t{1} << 22;
constexpr std::uint64_t kInequalityExponentCap = 10000000;

// All nonzero vectors of F_p^d in lexicographic coordinate order.
std::vector<std::vector<std::uint32_t>> nonzero_vectors(std::uint32_t p,
                                                        std::uint32_t d) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> v(d, 0);
  while (true) {
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (++v[i] < p) break;
      v[i] = 0;
      if (i == 0) return out;
    }
    out.push_back(v);
  }
}

bool first_nonzero_is_one(const std::vector<std::uint32_t>& v) {
  for (std::uint32_t x : v) {
    if (x != 0) return x == 1;
  }
  return false;
}

MultilinearForm linear_form(std::uint32_t p,
                            const std::vector<std::uint32_t>& coords) {
  return MultilinearForm(p, 1, static_cast<std::uint32_t>(coords.size()),
                         coords);
}

}  // namespace

void RankSearchParams::validate() const {
  gf::require_prime(p);
  if (arity < 1) throw DomainError("arity must be >= 1");
  if (dim < 1) throw DomainError("dimension must be >= 1");
  dense_size(dim, arity);
}

BigInt rank1_count(std::uint32_t p, std::uint32_t arity, std::uint32_t dim) {
  const BigInt nonzero = bigint_pow(BigInt(p), dim) - 1;
  const BigInt num = bigint_pow(nonzero, arity);
  const BigInt den = bigint_pow(BigInt(p) - 1, arity - 1);
  return num / den;
}

std::vector<MultilinearForm> enumerate_rank1(std::uint32_t p,
                                             std::uint32_t arity,
                                             std::uint32_t dim) {
  RankSearchParams{p, arity, dim, 0}.validate();
  const BigInt expected = rank1_count(p, arity, dim);
  if (expected > kRank1Cap) {
    throw ShapeError("decomposable enumeration of size " + expected.str() +
                     " exceeds the materialization cap");
  }
  const auto all = nonzero_vectors(p, dim);
  std::vector<std::vector<std::uint32_t>> projective;
  for (const auto& v : all) {
    if (first_nonzero_is_one(v)) projective.push_back(v);
  }

  std::vector<MultilinearForm> out;
  out.reserve(static_cast<std::size_t>(expected));
  // Odometer over (leading in `all`) x (slots 2..t in `projective`).
  std::vector<std::size_t> idx(arity, 0);
  while (true) {
    MultilinearForm f = linear_form(p, all[idx[0]]);
    for (std::uint32_t s = 1; s < arity; ++s) {
      f = tensor_concat(f, linear_form(p, projective[idx[s]]));
    }
    out.push_back(std::move(f));
    std::size_t s = arity;
    bool done = true;
    while (s > 0) {
      --s;
      const std::size_t limit = s == 0 ? all.size() : projective.size();
      if (++idx[s] < limit) {
        done = false;
        break;
      }
      idx[s] = 0;
    }
    if (done) break;
  }
  return out;
}

std::uint32_t flattening_rank(const MultilinearForm& t, std::uint32_t axis) {
  if (axis >= t.arity()) throw ShapeError("flattening axis out of range");
  const std::uint32_t d = t.dim();
  const std::uint32_t p = t.modulus();
  const std::size_t cols = t.coeff_count() / d;

  // Row i of the flattening: all coefficients whose axis-index equals i.
  // stride of the axis digit in the row-major flat offset:
  std::size_t stride = 1;
  for (std::uint32_t s = t.arity(); s-- > axis + 1;) stride *= d;

  std::vector<std::vector<std::uint32_t>> rows(
      d, std::vector<std::uint32_t>(cols));
  for (std::uint32_t i = 0; i < d; ++i) {
    std::size_t col = 0;
    // Walk flat offsets with the axis digit pinned to i.
    const std::size_t block = stride * d;
    for (std::size_t hi = 0; hi < t.coeff_count(); hi += block) {
      for (std::size_t lo = 0; lo < stride; ++lo) {
        rows[i][col++] = t.coeff_at(hi + i * stride + lo);
      }
    }
  }

  // Gaussian elimination mod p.
  std::uint32_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < d; ++col) {
    std::uint32_t pivot = rank;
    while (pivot < d && rows[pivot][col] == 0) ++pivot;
    if (pivot == d) continue;
    std::swap(rows[rank], rows[pivot]);
    const std::uint32_t inv = gf::inv(rows[rank][col], p);
    for (std::size_t c = col; c < cols; ++c) {
      rows[rank][c] = gf::mul(rows[rank][c], inv, p);
    }
    for (std::uint32_t r = 0; r < d; ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const std::uint32_t factor = rows[r][col];
      for (std::size_t c = col; c < cols; ++c) {
        rows[r][c] =
            gf::sub(rows[r][c], gf::mul(factor, rows[rank][c], p), p);
      }
    }
    ++rank;
  }
  return rank;
}

std::uint32_t max_flattening_rank(const MultilinearForm& t) {
  std::uint32_t best = 0;
  for (std::uint32_t axis = 0; axis < t.arity(); ++axis) {
    best = std::max(best, flattening_rank(t, axis));
  }
  return best;
}

std::string outcome_str(Outcome o) {
  switch (o) {
    case Outcome::Yes:
      return "yes";
    case Outcome::No:
      return "no";
    case Outcome::Inconclusive:
      return "inconclusive";
  }
  return "";
}

namespace {

struct SumSearch {
  const std::vector<MultilinearForm>& rank1;
  const std::unordered_map<std::string, std::size_t>& index;
  const SumSearchOptions& opts;
  std::uint64_t nodes = 0;
  std::vector<std::size_t> stack;

  Outcome run(const MultilinearForm& remaining, std::uint32_t budget,
              std::size_t start) {
    if (++nodes > opts.node_budget) return Outcome::Inconclusive;
    if (remaining.is_zero()) return Outcome::Yes;
    if (budget == 0) return Outcome::No;
    if (auto it = index.find(remaining.key()); it != index.end()) {
      stack.push_back(it->second);
      return Outcome::Yes;
    }
    if (budget == 1) return Outcome::No;
    if (opts.use_flattening_pruning &&
        max_flattening_rank(remaining) > budget) {
      return Outcome::No;
    }
    bool inconclusive = false;
    for (std::size_t i = start; i < rank1.size(); ++i) {
      stack.push_back(i);
      const Outcome sub = run(remaining - rank1[i], budget - 1, i + 1);
      if (sub == Outcome::Yes) return Outcome::Yes;
      stack.pop_back();
      if (sub == Outcome::Inconclusive) inconclusive = true;
    }
    return inconclusive ? Outcome::Inconclusive : Outcome::No;
  }
};

std::unordered_map<std::string, std::size_t> build_index(
    const std::vector<MultilinearForm>& rank1) {
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(rank1.size() * 2);
  for (std::size_t i = 0; i < rank1.size(); ++i) {
    index.emplace(rank1[i].key(), i);
  }
  return index;
}

SumSearchResult is_sum_impl(const MultilinearForm& t, std::uint32_t r,
                            const std::vector<MultilinearForm>& rank1,
                            const std::unordered_map<std::string, std::size_t>& index,
                            const SumSearchOptions& opts) {
  SumSearch search{rank1, index, opts, 0, {}};
  SumSearchResult result;
  result.outcome = search.run(t, r, 0);
  result.nodes_visited = search.nodes;
  if (result.outcome == Outcome::Yes) {
    MultilinearForm sum(t.modulus(), t.arity(), t.dim());
    for (std::size_t i : search.stack) {
      result.witness.push_back(rank1[i]);
      sum = sum + rank1[i];
    }
    if (!(sum == t)) {
      throw Error("internal error: sum witness failed re-verification");
    }
  }
  return result;
}

}  // namespace

SumSearchResult is_sum_of_rank1(const MultilinearForm& t, std::uint32_t r,
                                const std::vector<MultilinearForm>& rank1,
                                const SumSearchOptions& opts) {
  return is_sum_impl(t, r, rank1, build_index(rank1), opts);
}

SumSearchResult is_sum_of_rank1(const MultilinearForm& t, std::uint32_t r,
                                const SumSearchOptions& opts) {
  const auto rank1 = enumerate_rank1(t.modulus(), t.arity(), t.dim());
  return is_sum_impl(t, r, rank1, build_index(rank1), opts);
}

RankResult brute_rank(const MultilinearForm& t, const SumSearchOptions& opts) {
  RankResult result;
  if (t.is_zero()) {
    result.outcome = Outcome::Yes;
    result.rank = 0;
    return result;
  }
  const auto rank1 = enumerate_rank1(t.modulus(), t.arity(), t.dim());
  const auto index = build_index(rank1);
  std::size_t max_rank = t.coeff_count() / t.dim();  // d^(t-1)
  for (std::uint32_t r = 1; r <= max_rank; ++r) {
    SumSearchResult sub = is_sum_impl(t, r, rank1, index, opts);
    result.nodes_visited += sub.nodes_visited;
    if (sub.outcome == Outcome::Yes) {
      result.outcome = Outcome::Yes;
      result.rank = r;
      return result;
    }
    if (sub.outcome == Outcome::Inconclusive) {
      result.outcome = Outcome::Inconclusive;
      return result;
    }
  }
  throw Error("internal error: rank exceeded the d^(t-1) bound");
}

// ---------------------------------------------------------------------------
// Certificates

namespace {

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace

std::string certificate_hash(const RankSearchParams& params,
                             const MultilinearForm& generator) {
  std::string data = std::to_string(params.p) + "|" +
                     std::to_string(params.arity) + "|" +
                     std::to_string(params.dim) + "|" +
                     std::to_string(params.count) + "|" + generator.key();
  return fnv1a_hex(data);
}

nlohmann::json RankCertificate::to_json() const {
  return nlohmann::json{{"version", 1},
                        {"p", params.p},
                        {"t", params.arity},
                        {"d", params.dim},
                        {"r", params.count},
                        {"generator", generator.to_json()},
                        {"method", method},
                        {"stats",
                         {{"lines_scanned", lines_scanned},
                          {"nodes_visited", nodes_visited}}},
                        {"hash", hash}};
}

RankCertificate RankCertificate::from_json(const nlohmann::json& j) {
  if (j.value("version", 0) != 1) {
    throw ShapeError("unsupported certificate version");
  }
  RankCertificate cert{
      RankSearchParams{j.at("p").get<std::uint32_t>(),
                       j.at("t").get<std::uint32_t>(),
                       j.at("d").get<std::uint32_t>(),
                       j.at("r").get<std::uint32_t>()},
      MultilinearForm::from_json(j.at("generator")),
      j.at("method").get<std::string>(),
      j.at("stats").value("lines_scanned", std::uint64_t{0}),
      j.at("stats").value("nodes_visited", std::uint64_t{0}),
      j.at("hash").get<std::string>()};
  return cert;
}

bool verify_certificate(const RankCertificate& cert,
                        const SumSearchOptions& opts) {
  const RankSearchParams& params = cert.params;
  params.validate();
  const MultilinearForm& t = cert.generator;
  if (t.modulus() != params.p || t.arity() != params.arity ||
      t.dim() != params.dim || t.is_zero()) {
    return false;
  }
  if (certificate_hash(params, t) != cert.hash) return false;
  const auto rank1 = enumerate_rank1(params.p, params.arity, params.dim);
  const auto index = build_index(rank1);
  for (std::uint32_t k = 1; k < params.p; ++k) {
    if (is_sum_impl(t.scale(k), params.count, rank1, index, opts).outcome !=
        Outcome::No) {
      return false;
    }
  }
  return true;
}

FindLineResult find_avoiding_line(const RankSearchParams& params,
                                  unsigned threads,
                                  const SumSearchOptions& opts) {
  params.validate();
  const std::uint32_t p = params.p;
  const std::size_t n = dense_size(params.dim, params.arity);
  const auto rank1 = enumerate_rank1(p, params.arity, params.dim);
  const auto index = build_index(rank1);

  // Line generators: coefficient arrays whose first nonzero entry is 1,
  // streamed in ascending base-p order and filtered per worker slice.
  BigInt total_forms = bigint_pow(BigInt(p), n);
  if (total_forms > (std::uint64_t{1} << 40)) {
    throw ShapeError("form space too large to scan for lines");
  }
  const std::uint64_t total = total_forms.convert_to<std::uint64_t>();

  struct Local {
    std::optional<std::uint64_t> best;  // lowest verified line offset
    bool inconclusive = false;
    std::uint64_t lines = 0;
    std::uint64_t nodes = 0;
  };

  auto decode = [&](std::uint64_t offset) {
    std::vector<std::uint32_t> coeffs(n, 0);
    for (std::size_t i = n; i-- > 0;) {
      coeffs[i] = static_cast<std::uint32_t>(offset % p);
      offset /= p;
    }
    return coeffs;
  };

  auto scan = [&](std::uint64_t lo, std::uint64_t hi, Local& local) {
    for (std::uint64_t off = lo; off < hi; ++off) {
      const std::vector<std::uint32_t> coeffs = decode(off);
      if (!first_nonzero_is_one(coeffs)) continue;
      ++local.lines;
      MultilinearForm t(p, params.arity, params.dim, coeffs);
      bool qualified = true;
      bool line_inconclusive = false;
      for (std::uint32_t k = 1; k < p && qualified; ++k) {
        SumSearchResult res =
            is_sum_impl(t.scale(k), params.count, rank1, index, opts);
        local.nodes += res.nodes_visited;
        if (res.outcome == Outcome::Yes) qualified = false;
        if (res.outcome == Outcome::Inconclusive) {
          qualified = false;
          line_inconclusive = true;
        }
      }
      if (line_inconclusive) local.inconclusive = true;
      if (qualified && !local.best) local.best = off;
    }
  };

  const unsigned nthreads = std::max(1u, threads);
  std::vector<Local> locals(nthreads);
  if (nthreads == 1) {
    scan(0, total, locals[0]);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + nthreads - 1) / nthreads;
    for (unsigned w = 0; w < nthreads; ++w) {
      const std::uint64_t lo = std::min<std::uint64_t>(w * chunk, total);
      const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, total);
      pool.emplace_back([&scan, lo, hi, &locals, w] { scan(lo, hi, locals[w]); });
    }
    for (auto& th : pool) th.join();
  }

  FindLineResult result;
  std::optional<std::uint64_t> best;
  bool any_inconclusive = false;
  for (const Local& local : locals) {
    result.lines_scanned += local.lines;
    result.nodes_visited += local.nodes;
    any_inconclusive = any_inconclusive || local.inconclusive;
    if (local.best && (!best || *local.best < *best)) best = local.best;
  }

  if (best) {
    RankCertificate cert{params,
                         MultilinearForm(p, params.arity, params.dim,
                                         decode(*best)),
                         opts.use_flattening_pruning ? "dfs-with-pruning"
                                                     : "exhaustive-sums",
                         result.lines_scanned, result.nodes_visited, ""};
    cert.hash = certificate_hash(params, cert.generator);
    if (!verify_certificate(cert, opts)) {
      throw Error("internal error: certificate failed re-verification");
    }
    result.outcome = Outcome::Yes;
    result.certificate = std::move(cert);
  } else {
    result.outcome = any_inconclusive ? Outcome::Inconclusive : Outcome::No;
  }
  return result;
}

nlohmann::json CountingInequality::to_json() const {
  // Exact integers up to 64 digits, digit counts beyond.
  auto render = [](const BigInt& v) -> nlohmann::json {
    const std::string s = v.str();
    if (s.size() <= 64) return s;
    return nlohmann::json{{"digits", s.size()},
                          {"leading", s.substr(0, 12)}};
  };
  return nlohmann::json{
      {"holds", holds}, {"lhs", render(lhs)}, {"rhs", render(rhs)}};
}

CountingInequality counting_inequality(std::uint32_t p, std::uint32_t m) {
  gf::require_prime(p);
  if (m < 1) throw DomainError("m must be >= 1");
  std::uint64_t mp = 1;
  for (std::uint32_t i = 0; i < p; ++i) {
    mp *= m;
    if (mp > kInequalityExponentCap) {
      throw BudgetError("m^p too large to materialize p^(m^p) exactly");
    }
  }
  const std::uint64_t pm2 =
      static_cast<std::uint64_t>(p) * m * m;
  CountingInequality result;
  result.lhs = (bigint_pow(BigInt(p), mp) - 1) / (BigInt(p) - 1);
  result.rhs = bigint_pow(BigInt(p), pm2);
  result.holds = result.lhs > result.rhs;
  return result;
}

nlohmann::json ShadowReport::to_json() const {
  return nlohmann::json{{"p", p},
                        {"m", m_dim},
                        {"count", count},
                        {"trials", trials},
                        {"seed", seed},
                        {"violations", violations},
                        {"violation_tuples", violation_tuples}};
}

ShadowReport group_shadow_check(std::uint32_t p, std::uint32_t m_dim,
                                std::uint32_t count, std::uint64_t trials,
                                std::uint64_t seed,
                                const RankCertificate& cert) {
  if (cert.params.p != p || cert.params.arity != p ||
      cert.params.dim != m_dim || cert.params.count != count) {
    throw DomainError(
        "certificate parameters do not match the group shadow check");
  }
  const GroupParams params{p, p + 1, m_dim};
  params.validate();

  // The nonzero multiples of the certified generator.
  std::vector<std::string> line_keys;
  for (std::uint32_t k = 1; k < p; ++k) {
    line_keys.push_back(cert.generator.scale(k).key());
  }

  ShadowReport report;
  report.p = p;
  report.m_dim = m_dim;
  report.count = count;
  report.trials = trials;
  report.seed = seed;

  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::vector<UnitriMatrix> tuple;
    tuple.reserve(count);
    UnitriMatrix product = UnitriMatrix::identity(params);
    MultilinearForm corner_sum(p, p, m_dim);
    for (std::uint32_t i = 0; i < count; ++i) {
      UnitriMatrix a = random_unitri(params, rng);
      product = product * a.pth_power_fast();
      corner_sum = corner_sum + a.pth_power_fast().corner();
      tuple.push_back(std::move(a));
    }
    const std::string corner_key = product.corner().key();
    bool bad = corner_sum.key() != corner_key;
    for (const std::string& lk : line_keys) {
      if (lk == corner_key) bad = true;
    }
    if (bad) {
      ++report.violations;
      nlohmann::json tj = nlohmann::json::array();
      for (const UnitriMatrix& a : tuple) tj.push_back(a.to_json());
      report.violation_tuples.push_back(std::move(tj));
    }
  }
  return report;
}

}  // namespace grouplaw::rankcert
