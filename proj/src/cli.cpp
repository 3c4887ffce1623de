#include "grouplaw/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "grouplaw/laws.hpp"
#include "grouplaw/rankcert.hpp"
#include "grouplaw/wreath.hpp"

namespace grouplaw::cli {

namespace {

using nlohmann::ordered_json;

struct Outcome {
  std::string verdict;  // "verified" | "refuted" | "inconclusive" | "ok"
  ordered_json details;
  int exit_code = kExitVerified;
};

std::string verdict_of(rankcert::Outcome o, const char* yes, const char* no) {
  switch (o) {
    case rankcert::Outcome::Yes:
      return yes;
    case rankcert::Outcome::No:
      return no;
    case rankcert::Outcome::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

int exit_of(rankcert::Outcome o, bool yes_is_success) {
  switch (o) {
    case rankcert::Outcome::Yes:
      return yes_is_success ? kExitVerified : kExitRefuted;
    case rankcert::Outcome::No:
      return yes_is_success ? kExitRefuted : kExitVerified;
    case rankcert::Outcome::Inconclusive:
      return kExitInconclusive;
  }
  return kExitInconclusive;
}

std::map<std::string, std::int64_t> parse_params(
    const std::vector<std::string>& bindings) {
  std::map<std::string, std::int64_t> params;
  for (const std::string& b : bindings) {
    const std::size_t eq = b.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw DomainError("parameter binding must look like p=3, got '" + b +
                        "'");
    }
    params[b.substr(0, eq)] = std::stoll(b.substr(eq + 1));
  }
  return params;
}

unsigned default_threads() {
  if (const char* env = std::getenv("GROUPLAW_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void render_markdown(const ordered_json& report, std::ostream& os) {
  os << "# grouplaw report: " << report["command"].get<std::string>() << "\n\n";
  os << "| field | value |\n|---|---|\n";
  os << "| verdict | " << report["verdict"].get<std::string>() << " |\n";
  for (const auto& [k, v] : report["config"].items()) {
    os << "| config." << k << " | " << v.dump() << " |\n";
  }
  os << "\n## details\n\n```json\n" << report["details"].dump(2)
     << "\n```\n\n## timing\n\n- wall_ms: "
     << report["timing"]["wall_ms"].dump() << "\n";
}

// ---------------------------------------------------------------------------
// Subcommand handlers

Outcome run_ut_verify_lemma1(std::uint32_t p, std::uint32_t m,
                             std::uint64_t trials, std::uint64_t seed) {
  const GroupParams params{p, p + 1, m};
  params.validate();

  Outcome out;
  std::uint64_t formula_checked = 0;
  std::uint64_t formula_mismatches = 0;
  ordered_json first_mismatch;

  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const UnitriMatrix a = random_unitri(params, rng);
    const UnitriMatrix fast = a.pth_power_fast();
    const UnitriMatrix slow = a.pow(p);
    ++formula_checked;
    bool ok = fast == slow;
    // non-corner entries must vanish identically
    for (std::uint32_t i = 1; ok && i < params.ell; ++i) {
      for (std::uint32_t j = i + 1; j <= params.ell; ++j) {
        if (i == 1 && j == params.ell) continue;
        if (!fast.entry(i, j).is_zero()) ok = false;
      }
    }
    if (!ok) {
      ++formula_mismatches;
      if (first_mismatch.is_null()) first_mismatch = a.to_json();
    }
  }

  const VerbalSubgroupReport verbal = verify_verbal_subgroup(params, trials, seed);

  out.details = ordered_json{
      {"corner_formula",
       {{"matrices_checked", formula_checked},
        {"mismatches", formula_mismatches}}},
      {"verbal_subgroup", verbal.to_json()},
      {"corner_dimension", corner_dimension(params)},
  };
  if (!first_mismatch.is_null()) {
    out.details["corner_formula"]["first_mismatch"] = first_mismatch;
  }
  const bool ok = formula_mismatches == 0 && verbal.ok();
  out.verdict = ok ? "verified" : "refuted";
  out.exit_code = ok ? kExitVerified : kExitRefuted;
  return out;
}

Outcome run_ut_power(const std::string& input, std::uint64_t k) {
  std::ifstream in(input);
  if (!in) throw DomainError("cannot read matrix file '" + input + "'");
  nlohmann::json j;
  in >> j;
  const UnitriMatrix a = UnitriMatrix::from_json(j);
  const UnitriMatrix ak = a.pow(k);

  Outcome out;
  out.details = ordered_json{{"power", ak.to_json()}};
  // cross-check the corner fast path whenever it applies
  if (a.params().ell == a.params().p + 1 && k == a.params().p) {
    out.details["fast_path_agrees"] = (a.pth_power_fast() == ak);
  }
  out.verdict = "ok";
  return out;
}

Outcome run_ut_order(std::uint32_t p, std::uint32_t ell, std::uint32_t m) {
  const GroupParams params{p, ell, m};
  params.validate();
  Outcome out;
  out.details = ordered_json{
      {"order", ut_group_order(params).str()},
      {"coefficient_slots", ut_coeff_slot_count(params)},
  };
  if (ell == p + 1) out.details["corner_dimension"] = corner_dimension(params);
  out.verdict = "ok";
  return out;
}

Outcome run_rank_find_line(const rankcert::RankSearchParams& params,
                           unsigned threads) {
  const rankcert::FindLineResult res =
      rankcert::find_avoiding_line(params, threads);
  Outcome out;
  out.verdict = verdict_of(res.outcome, "verified", "refuted");
  out.exit_code = exit_of(res.outcome, true);
  out.details = ordered_json{{"lines_scanned", res.lines_scanned},
                             {"nodes_visited", res.nodes_visited}};
  if (res.certificate) {
    out.details["certificate"] = res.certificate->to_json();
  } else if (res.outcome == rankcert::Outcome::No) {
    out.details["conclusion"] =
        "no line avoids sums of " + std::to_string(params.count) +
        " decomposables in this space";
  }
  return out;
}

Outcome run_rank_verify(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read certificate file '" + path + "'");
  nlohmann::json j;
  in >> j;
  // accept either a bare certificate or a find-line report
  if (j.contains("details") && j["details"].contains("certificate")) {
    j = j["details"]["certificate"];
  }
  const rankcert::RankCertificate cert = rankcert::RankCertificate::from_json(j);
  const bool ok = rankcert::verify_certificate(cert);
  Outcome out;
  out.verdict = ok ? "verified" : "refuted";
  out.exit_code = ok ? kExitVerified : kExitRefuted;
  out.details = ordered_json{{"hash", cert.hash},
                             {"p", cert.params.p},
                             {"t", cert.params.arity},
                             {"d", cert.params.dim},
                             {"r", cert.params.count}};
  return out;
}

Outcome run_rank_inequality(std::uint32_t p, std::uint32_t m) {
  const rankcert::CountingInequality res = rankcert::counting_inequality(p, m);
  Outcome out;
  out.verdict = res.holds ? "verified" : "refuted";
  out.exit_code = res.holds ? kExitVerified : kExitRefuted;
  out.details = res.to_json();
  return out;
}

Outcome run_identity_check(const std::string& group, const std::string& word,
                           const std::map<std::string, std::int64_t>& params,
                           bool exhaustive_flag, bool randomized_flag,
                           std::uint64_t trials, std::uint64_t seed) {
  const GroupPtr g = parse_group_descriptor(group);
  const words::GroupWord w = words::GroupWord::parse(word, params);

  bool exhaustive;
  if (exhaustive_flag) {
    exhaustive = true;
  } else if (randomized_flag) {
    exhaustive = false;
  } else {
    // default: exhaustive when it fits the budget
    BigInt space = 1;
    bool fits = true;
    for (std::uint32_t v = 0; v < w.max_var(); ++v) {
      space *= g->order();
      if (space > laws::kExhaustiveBudget) {
        fits = false;
        break;
      }
    }
    exhaustive = fits;
  }

  const laws::LawCheckReport report =
      exhaustive ? laws::check_law_exhaustive(*g, w)
                 : laws::check_law_randomized(*g, w, trials, seed);
  Outcome out;
  out.details = report.to_json();
  switch (report.verdict) {
    case laws::Verdict::Holds:
      out.verdict = "verified";
      out.exit_code = kExitVerified;
      break;
    case laws::Verdict::NoCounterexampleFound:
      out.verdict = "no-counterexample-found";
      out.exit_code = kExitVerified;
      break;
    case laws::Verdict::Refuted:
      out.verdict = "refuted";
      out.exit_code = kExitRefuted;
      break;
  }
  return out;
}

Outcome run_identity_verbal(const std::string& group,
                            const std::vector<std::string>& word_texts,
                            const std::map<std::string, std::int64_t>& params) {
  const GroupPtr g = parse_group_descriptor(group);
  std::vector<words::GroupWord> ws;
  for (const auto& t : word_texts) ws.push_back(words::GroupWord::parse(t, params));
  const laws::VerbalClosure closure = laws::verbal_closure(*g, ws);
  Outcome out;
  out.verdict = "ok";
  out.details = ordered_json{{"group", g->name()},
                             {"subgroup_order", closure.order()}};
  if (closure.order() <= 64) out.details["elements"] = closure.keys;
  return out;
}

Outcome run_identity_member(const std::string& group, std::uint64_t m,
                            std::uint64_t n) {
  const GroupPtr g = parse_group_descriptor(group);
  const laws::MembershipReport report =
      laws::burnside_product_membership(*g, m, n);
  Outcome out;
  out.details = report.to_json();
  out.details["group"] = g->name();
  out.verdict = report.belongs ? "verified" : "refuted";
  out.exit_code = report.belongs ? kExitVerified : kExitRefuted;
  return out;
}

Outcome run_identity_scheme(const std::string& group, std::uint64_t outer,
                            std::uint64_t inner,
                            std::optional<std::uint64_t> max_k) {
  const GroupPtr g = parse_group_descriptor(group);
  const laws::SchemeReport report =
      laws::scheme_equivalence_check(*g, outer, inner, max_k);
  Outcome out;
  out.details = report.to_json();
  out.details["group"] = g->name();
  out.verdict = report.equivalent ? "verified" : "refuted";
  out.exit_code = report.equivalent ? kExitVerified : kExitRefuted;
  return out;
}

Outcome run_wreath_build(const std::string& base, const std::string& top) {
  const auto w = make_wreath(parse_group_descriptor(base),
                             parse_group_descriptor(top));
  Outcome out;
  out.verdict = "ok";
  out.details = ordered_json{
      {"name", w->name()},
      {"order", w->order().str()},
      {"base_order", w->base_group().order().str()},
      {"top_order", w->top_group().order().str()},
      {"generators", w->generators().size()},
  };
  if (w->enumerable(4096)) {
    std::uint64_t kernel = 0;
    for (const auto& e : w->elements(4096)) {
      if (w->in_base(e)) ++kernel;
    }
    out.details["alpha_kernel_size"] = kernel;
  }
  return out;
}

Outcome run_wreath_discriminate(const std::string& group,
                                const std::string& target,
                                const std::string& set_spec) {
  const GroupPtr g = parse_group_descriptor(group);
  const GroupPtr d = parse_group_descriptor(target);

  std::vector<FiniteGroup::Elt> s;
  if (set_spec == "all") {
    s = g->elements(laws::kClosureOrderBudget);
  } else {
    std::map<std::string, FiniteGroup::Elt> by_key;
    for (const auto& e : g->elements(laws::kClosureOrderBudget)) {
      by_key.emplace(g->encode(e), e);
    }
    std::size_t start = 0;
    const std::string spec = set_spec;
    while (start <= spec.size()) {
      const std::size_t pos = spec.find(';', start);
      const std::string token =
          spec.substr(start, pos == std::string::npos ? std::string::npos
                                                      : pos - start);
      if (!token.empty()) {
        auto it = by_key.find(token);
        if (it == by_key.end()) {
          throw DomainError("'" + token + "' is not an element encoding of " +
                            g->name());
        }
        s.push_back(it->second);
      }
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    if (s.empty()) throw DomainError("--set selected no elements");
  }

  const DiscriminationResult res = discriminate(*g, *d, s);
  Outcome out;
  out.details = res.to_json();
  out.details["group"] = g->name();
  out.details["target"] = d->name();
  out.details["set_size"] = s.size();
  out.verdict = verdict_of(res.outcome, "verified", "refuted");
  out.exit_code = exit_of(res.outcome, true);
  return out;
}

Outcome run_wreath_uv_shadow(std::uint32_t s, std::uint32_t r,
                             const std::string& top, const std::string& base,
                             std::uint64_t kernel_words, std::uint64_t seed) {
  const GroupPtr d = parse_group_descriptor(top);
  const GroupPtr a = parse_group_descriptor(base);
  // default eps images: generators of D, cycled over the y's
  const auto gens = d->generators();
  if (gens.empty()) throw DomainError("top group must have generators");
  std::vector<FiniteGroup::Elt> eps;
  for (std::uint32_t i = 0; i < s; ++i) eps.push_back(gens[i % gens.size()]);

  const UvShadowReport report =
      uv_shadow_check(s, r, d, a, eps, kernel_words, seed);
  Outcome out;
  out.details = report.to_json();
  out.verdict = report.violations == 0 ? "verified" : "refuted";
  out.exit_code = report.violations == 0 ? kExitVerified : kExitRefuted;
  return out;
}

Outcome run_words_nielsen(const std::string& tuple_spec,
                          std::optional<std::uint32_t> rank,
                          const std::map<std::string, std::int64_t>& params) {
  std::vector<words::GroupWord> tuple;
  std::size_t start = 0;
  while (start <= tuple_spec.size()) {
    const std::size_t pos = tuple_spec.find(';', start);
    const std::string token =
        tuple_spec.substr(start, pos == std::string::npos ? std::string::npos
                                                          : pos - start);
    tuple.push_back(words::GroupWord::parse(token, params));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }

  const words::NielsenResult res = words::nielsen_reduce(tuple);
  Outcome out;
  out.verdict = "ok";
  ordered_json reduced = ordered_json::array();
  for (const auto& w : res.tuple) reduced.push_back(w.str());
  ordered_json moves = ordered_json::array();
  for (const auto& mv : res.log) moves.push_back(mv.str());
  out.details = ordered_json{{"reduced", reduced},
                             {"moves", moves},
                             {"trivial_slots", res.trivial}};
  if (rank) {
    out.details["is_basis"] = words::is_basis(tuple, *rank);
    out.details["rank"] = *rank;
  }
  return out;
}

Outcome run_words_parse(const std::string& text,
                        const std::map<std::string, std::int64_t>& params) {
  const words::GroupWord w = words::GroupWord::parse(text, params);
  Outcome out;
  out.verdict = "ok";
  ordered_json syllables = ordered_json::array();
  for (const auto& s : w.syllables()) {
    syllables.push_back(ordered_json{{"var", s.var}, {"exp", s.exp}});
  }
  out.details = ordered_json{{"normal_form", w.str()},
                             {"length", w.length()},
                             {"max_var", w.max_var()},
                             {"syllables", syllables}};
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"grouplaw: finite p-groups, identities and tensor-rank "
               "certificates"};
  app.require_subcommand(1);

  std::string out_path;
  std::string format = "json";
  app.add_option("--out", out_path, "write the report to this file");
  app.add_option("--format", format, "report format: json | markdown")
      ->check(CLI::IsMember({"json", "markdown"}));

  // shared option storage
  std::uint32_t p = 3, m = 1, ell = 4, arity = 3, dim = 2, count = 2;
  std::uint32_t s_rank = 1, r_rank = 1;
  std::optional<std::uint32_t> basis_rank;
  std::uint64_t trials = 200, seed = 1, k_power = 1, outer = 3, inner = 3;
  std::uint64_t kernel_words = 500;
  std::optional<std::uint64_t> max_k;
  unsigned threads = default_threads();
  std::string group, target, word, input, set_spec = "all", tuple_spec;
  std::string base = "cyclic:2", top = "cyclic:3";
  std::vector<std::string> param_bindings, word_texts;
  bool exhaustive_flag = false, randomized_flag = false;

  // ut
  CLI::App* ut = app.add_subcommand("ut", "unitriangular group tools");
  ut->require_subcommand(1);
  CLI::App* lemma1 = ut->add_subcommand(
      "verify-lemma1", "fast p-th power formula and the central verbal "
                       "subgroup of p-th powers");
  lemma1->add_option("--p", p, "odd prime")->required();
  lemma1->add_option("--m", m, "space dimension")->required();
  lemma1->add_option("--trials", trials, "seeded matrices to test");
  lemma1->add_option("--seed", seed, "RNG seed");

  CLI::App* power = ut->add_subcommand("power", "raise a matrix to a power");
  power->add_option("--input", input, "matrix JSON file")->required();
  power->add_option("--k", k_power, "exponent")->required();

  CLI::App* order_cmd = ut->add_subcommand("order", "group order of UT(l,p,m)");
  order_cmd->add_option("--p", p, "odd prime")->required();
  order_cmd->add_option("--l", ell, "matrix size")->required();
  order_cmd->add_option("--m", m, "space dimension")->required();

  // rank
  CLI::App* rank = app.add_subcommand("rank", "tensor-rank certificates");
  rank->require_subcommand(1);
  CLI::App* find_line = rank->add_subcommand(
      "find-line", "search for a line all of whose nonzero multiples exceed "
                   "the decomposable-sum budget");
  find_line->add_option("--p", p, "prime")->required();
  find_line->add_option("--arity", arity, "tensor arity t")->required();
  find_line->add_option("--dim", dim, "dimension d")->required();
  find_line->add_option("--count", count, "summand budget r")->required();
  find_line->add_option("--threads", threads, "worker threads");

  CLI::App* verify = rank->add_subcommand("verify", "re-verify a certificate");
  verify->add_option("certificate", input, "certificate JSON file")->required();

  CLI::App* inequality =
      rank->add_subcommand("inequality", "exact counting inequality "
                                         "(p^(m^p)-1)/(p-1) > p^(p m^2)");
  inequality->add_option("--p", p, "prime")->required();
  inequality->add_option("--m", m, "dimension")->required();

  // identity
  CLI::App* identity = app.add_subcommand("identity", "group identities");
  identity->require_subcommand(1);
  CLI::App* check = identity->add_subcommand("check", "check a law");
  check->add_option("--group", group, "group descriptor")->required();
  check->add_option("--word", word, "law word, e.g. \"(x1^p x2^p)^p\"")
      ->required();
  check->add_option("--param", param_bindings, "parameter binding name=value");
  check->add_flag("--exhaustive", exhaustive_flag, "force exhaustive mode");
  check->add_flag("--randomized", randomized_flag, "force randomized mode");
  check->add_option("--trials", trials, "randomized trials");
  check->add_option("--seed", seed, "RNG seed");

  CLI::App* verbal = identity->add_subcommand("verbal", "verbal subgroup");
  verbal->add_option("--group", group, "group descriptor")->required();
  verbal->add_option("--word", word_texts, "law word(s)")->required();
  verbal->add_option("--param", param_bindings, "parameter binding");

  CLI::App* member = identity->add_subcommand(
      "member", "membership in the Burnside product B_m * B_n");
  member->add_option("--group", group, "group descriptor")->required();
  member->add_option("--m", outer, "exponent of the normal subgroup")
      ->required();
  member->add_option("--n", inner, "exponent of the quotient")->required();

  CLI::App* scheme = identity->add_subcommand(
      "scheme", "scheme laws (x1^n...xk^n)^m = 1 vs membership");
  scheme->add_option("--group", group, "group descriptor")->required();
  scheme->add_option("--outer", outer, "outer exponent m")->required();
  scheme->add_option("--inner", inner, "inner exponent n")->required();
  scheme->add_option("--max-k", max_k, "truncate the scheme at this k");

  // wreath
  CLI::App* wreath = app.add_subcommand("wreath", "wreath products");
  wreath->require_subcommand(1);
  CLI::App* build = wreath->add_subcommand("build", "construct A wr D");
  build->add_option("--base", base, "base group descriptor")->required();
  build->add_option("--top", top, "top group descriptor")->required();

  CLI::App* disc = wreath->add_subcommand(
      "discriminate", "homomorphism G -> D injective on S");
  disc->add_option("--group", group, "source group descriptor")->required();
  disc->add_option("--target", target, "target group descriptor")->required();
  disc->add_option("--set", set_spec,
                   "'all' or ';'-separated element encodings");

  CLI::App* uv = wreath->add_subcommand(
      "uv-shadow", "the eta-construction over a finite wreath product");
  uv->add_option("--s", s_rank, "number of y generators")->required();
  uv->add_option("--r", r_rank, "number of z generators")->required();
  uv->add_option("--top", top, "top group descriptor")->required();
  uv->add_option("--base", base, "base group descriptor")->required();
  uv->add_option("--kernel-words", kernel_words, "kernel words to sample");
  uv->add_option("--seed", seed, "RNG seed");

  // words
  CLI::App* words_cmd = app.add_subcommand("words", "free-group words");
  words_cmd->require_subcommand(1);
  CLI::App* nielsen = words_cmd->add_subcommand("nielsen", "Nielsen-reduce a "
                                                           "tuple");
  nielsen->add_option("--tuple", tuple_spec, "';'-separated words")->required();
  nielsen->add_option("--rank", basis_rank, "ambient rank for a basis check");
  nielsen->add_option("--param", param_bindings, "parameter binding");

  CLI::App* parse = words_cmd->add_subcommand("parse", "parse one word");
  parse->add_option("word", word, "word text")->required();
  parse->add_option("--param", param_bindings, "parameter binding");

  // let --out/--format appear after any subcommand
  for (CLI::App* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (CLI::App* leaf : sub->get_subcommands({})) leaf->fallthrough();
  }

  std::vector<std::string> argv_copy = args;
  std::reverse(argv_copy.begin(), argv_copy.end());
  try {
    app.parse(argv_copy);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends
      out << app.help() << "\n";
      return kExitVerified;
    }
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  const auto started = std::chrono::steady_clock::now();
  Outcome outcome;
  std::string command;
  ordered_json config;

  try {
    const auto params = parse_params(param_bindings);
    if (lemma1->parsed()) {
      command = "ut verify-lemma1";
      config = {{"p", p}, {"m", m}, {"trials", trials}, {"seed", seed}};
      outcome = run_ut_verify_lemma1(p, m, trials, seed);
    } else if (power->parsed()) {
      command = "ut power";
      config = {{"input", input}, {"k", k_power}};
      outcome = run_ut_power(input, k_power);
    } else if (order_cmd->parsed()) {
      command = "ut order";
      config = {{"p", p}, {"l", ell}, {"m", m}};
      outcome = run_ut_order(p, ell, m);
    } else if (find_line->parsed()) {
      command = "rank find-line";
      config = {{"p", p},
                {"arity", arity},
                {"dim", dim},
                {"count", count},
                {"threads", threads}};
      outcome = run_rank_find_line({p, arity, dim, count}, threads);
    } else if (verify->parsed()) {
      command = "rank verify";
      config = {{"certificate", input}};
      outcome = run_rank_verify(input);
    } else if (inequality->parsed()) {
      command = "rank inequality";
      config = {{"p", p}, {"m", m}};
      outcome = run_rank_inequality(p, m);
    } else if (check->parsed()) {
      command = "identity check";
      config = {{"group", group},   {"word", word},
                {"params", param_bindings}, {"trials", trials},
                {"seed", seed},     {"exhaustive", exhaustive_flag},
                {"randomized", randomized_flag}};
      outcome = run_identity_check(group, word, params, exhaustive_flag,
                                   randomized_flag, trials, seed);
    } else if (verbal->parsed()) {
      command = "identity verbal";
      config = {{"group", group}, {"words", word_texts},
                {"params", param_bindings}};
      outcome = run_identity_verbal(group, word_texts, params);
    } else if (member->parsed()) {
      command = "identity member";
      config = {{"group", group}, {"m", outer}, {"n", inner}};
      outcome = run_identity_member(group, outer, inner);
    } else if (scheme->parsed()) {
      command = "identity scheme";
      config = {{"group", group}, {"outer", outer}, {"inner", inner}};
      if (max_k) config["max_k"] = *max_k;
      outcome = run_identity_scheme(group, outer, inner, max_k);
    } else if (build->parsed()) {
      command = "wreath build";
      config = {{"base", base}, {"top", top}};
      outcome = run_wreath_build(base, top);
    } else if (disc->parsed()) {
      command = "wreath discriminate";
      config = {{"group", group}, {"target", target}, {"set", set_spec}};
      outcome = run_wreath_discriminate(group, target, set_spec);
    } else if (uv->parsed()) {
      command = "wreath uv-shadow";
      config = {{"s", s_rank},
                {"r", r_rank},
                {"top", top},
                {"base", base},
                {"kernel_words", kernel_words},
                {"seed", seed}};
      outcome = run_wreath_uv_shadow(s_rank, r_rank, top, base, kernel_words,
                                     seed);
    } else if (nielsen->parsed()) {
      command = "words nielsen";
      config = {{"tuple", tuple_spec}, {"params", param_bindings}};
      if (basis_rank) config["rank"] = *basis_rank;
      outcome = run_words_nielsen(tuple_spec, basis_rank, params);
    } else if (parse->parsed()) {
      command = "words parse";
      config = {{"word", word}, {"params", param_bindings}};
      outcome = run_words_parse(word, params);
    } else {
      err << "usage error: no subcommand\n";
      return kExitUsage;
    }
  } catch (const BudgetError& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const Error& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  const auto elapsed = std::chrono::steady_clock::now() - started;
  const double wall_ms =
      std::chrono::duration<double, std::milli>(elapsed).count();

  ordered_json report{{"tool", "grouplaw"},
                      {"version", kToolVersion},
                      {"command", command},
                      {"config", config},
                      {"verdict", outcome.verdict},
                      {"details", outcome.details},
                      {"timing", {{"wall_ms", wall_ms}}}};

  const auto emit = [&](std::ostream& os) {
    if (format == "markdown") {
      render_markdown(report, os);
    } else {
      os << report.dump(2) << "\n";
    }
  };
  if (!out_path.empty()) {
    std::ofstream file(out_path);
    if (!file) {
      err << "usage error: cannot write '" << out_path << "'\n";
      return kExitUsage;
    }
    emit(file);
  } else {
    emit(out);
  }
  return outcome.exit_code;
}

}  // namespace grouplaw::cli
