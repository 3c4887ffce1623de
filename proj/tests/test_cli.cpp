#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "grouplaw/cli.hpp"

using grouplaw::cli::run;

namespace {

struct Result {
  int code;
  nlohmann::json report;
  std::string raw;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  Result res{code, {}, out.str(), err.str()};
  if (!res.raw.empty() && res.raw.front() == '{') {
    res.report = nlohmann::json::parse(res.raw);
  }
  return res;
}

// the determinism contract excludes the timing section
std::string verdict_bytes(nlohmann::json report) {
  report.erase("timing");
  return report.dump();
}

}  // namespace

TEST_CASE("rank inequality: paper value and exit codes") {
  Result t = invoke({"rank", "inequality", "--p", "3", "--m", "4"});
  CHECK(t.code == 0);
  CHECK(t.report["verdict"] == "verified");
  Result f = invoke({"rank", "inequality", "--p", "3", "--m", "3"});
  CHECK(f.code == 1);
  CHECK(f.report["verdict"] == "refuted");
}

TEST_CASE("identity check: transposition counterexample with exit 1") {
  Result r = invoke({"identity", "check", "--group", "sym:3", "--word", "x1^3"});
  CHECK(r.code == 1);
  CHECK(r.report["verdict"] == "refuted");
  CHECK(r.report["details"]["counterexample"].size() == 1);
  CHECK(r.report["config"]["seed"] == 1);  // seed always recorded
}

TEST_CASE("identity check with parameters") {
  Result r = invoke({"identity", "check", "--group", "sym:3", "--word",
                     "(x1^2 x2^2)^3"});
  CHECK(r.code == 0);
  CHECK(r.report["verdict"] == "verified");
  CHECK(r.report["details"]["mode"] == "exhaustive");
  CHECK(r.report["details"]["assignments_checked"] == 36);
}

TEST_CASE("usage errors exit with 64") {
  CHECK(invoke({"identity", "check", "--group", "nope:1", "--word", "x1"})
            .code == 64);
  CHECK(invoke({"identity", "check", "--group", "sym:3", "--word", "x1^0"})
            .code == 64);
  CHECK(invoke({"bogus"}).code == 64);
  CHECK(invoke({"words", "parse", "x1^p"}).code == 64);  // unbound parameter
}

TEST_CASE("budget exhaustion reports inconclusive exit 2") {
  Result r = invoke({"identity", "check", "--group", "sym:5", "--word",
                     "[[x1,x2],[x3,x4]]", "--exhaustive"});
  CHECK(r.code == 2);
  CHECK(r.err.find("inconclusive") != std::string::npos);
}

TEST_CASE("rank find-line writes a certificate that rank verify accepts") {
  const std::string path = "cli_cert_roundtrip.json";
  Result fl = invoke({"rank", "find-line", "--p", "3", "--arity", "3", "--dim",
                      "2", "--count", "2", "--threads", "2", "--out", path});
  CHECK(fl.code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  nlohmann::json report;
  in >> report;
  CHECK(report["verdict"] == "verified");
  CHECK(report["details"]["certificate"]["r"] == 2);

  Result rv = invoke({"rank", "verify", path});
  CHECK(rv.code == 0);
  CHECK(rv.report["verdict"] == "verified");
  std::remove(path.c_str());
}

TEST_CASE("rank find-line: defin none at count 3") {
  Result r = invoke({"rank", "find-line", "--p", "3", "--arity", "3", "--dim",
                     "2", "--count", "3"});
  CHECK(r.code == 1);
  CHECK(r.report["verdict"] == "refuted");
}

TEST_CASE("ut order and corner dimension") {
  Result r = invoke({"ut", "order", "--p", "3", "--l", "4", "--m", "2"});
  CHECK(r.code == 0);
  CHECK(r.report["details"]["order"] == "31381059609");  // 3^22
  CHECK(r.report["details"]["corner_dimension"] == 8);
}

TEST_CASE("ut power reads and writes the matrix JSON format") {
  // identity matrix of UT(4,3,1) in the documented format
  nlohmann::json matrix = {
      {"version", 1}, {"p", 3}, {"l", 4}, {"m", 1},
      {"entries",
       {{"1,2", {1}}, {"1,3", {0}}, {"1,4", {0}},
        {"2,3", {1}}, {"2,4", {0}}, {"3,4", {1}}}}};
  const std::string path = "cli_power_input.json";
  std::ofstream(path) << matrix.dump();
  Result r = invoke({"ut", "power", "--input", path, "--k", "3"});
  CHECK(r.code == 0);
  CHECK(r.report["details"]["fast_path_agrees"] == true);
  // A^3 is the identity except the corner = product of the superdiagonal
  CHECK(r.report["details"]["power"]["entries"]["1,4"] ==
        nlohmann::json::array({1}));
  CHECK(r.report["details"]["power"]["entries"]["1,2"] ==
        nlohmann::json::array({0}));
  std::remove(path.c_str());
}

TEST_CASE("ut verify-lemma1 runs both lemma parts") {
  Result r = invoke({"ut", "verify-lemma1", "--p", "3", "--m", "1", "--trials",
                     "40", "--seed", "11"});
  CHECK(r.code == 0);
  CHECK(r.report["verdict"] == "verified");
  CHECK(r.report["details"]["corner_formula"]["mismatches"] == 0);
  CHECK(r.report["details"]["verbal_subgroup"]["verbal_subgroup_order"] == 3);
}

TEST_CASE("byte-identical verdict sections under a fixed seed") {
  const std::vector<std::string> cmd{"ut",       "verify-lemma1", "--p", "3",
                                     "--m",      "2",             "--trials",
                                     "60",       "--seed",        "7"};
  Result a = invoke(cmd);
  Result b = invoke(cmd);
  CHECK(a.code == 0);
  CHECK(verdict_bytes(a.report) == verdict_bytes(b.report));

  Result c = invoke({"wreath", "uv-shadow", "--s", "1", "--r", "1", "--top",
                     "cyclic:3", "--base", "cyclic:2", "--kernel-words", "30",
                     "--seed", "3"});
  Result d = invoke({"wreath", "uv-shadow", "--s", "1", "--r", "1", "--top",
                     "cyclic:3", "--base", "cyclic:2", "--kernel-words", "30",
                     "--seed", "3"});
  CHECK(c.code == 0);
  CHECK(verdict_bytes(c.report) == verdict_bytes(d.report));
}

TEST_CASE("markdown format sections timing separately") {
  std::ostringstream out, err;
  const int code = run({"rank", "inequality", "--p", "3", "--m", "4",
                        "--format", "markdown"},
                       out, err);
  CHECK(code == 0);
  const std::string text = out.str();
  CHECK(text.find("# grouplaw report: rank inequality") != std::string::npos);
  CHECK(text.find("| verdict | verified |") != std::string::npos);
  const std::size_t timing = text.find("## timing");
  REQUIRE(timing != std::string::npos);
  // everything before the timing section is deterministic
  std::ostringstream out2, err2;
  run({"rank", "inequality", "--p", "3", "--m", "4", "--format", "markdown"},
      out2, err2);
  CHECK(text.substr(0, timing) == out2.str().substr(0, timing));
}

TEST_CASE("wreath build reports order and kernel size") {
  Result r = invoke({"wreath", "build", "--base", "cyclic:2", "--top",
                     "cyclic:3"});
  CHECK(r.code == 0);
  CHECK(r.report["details"]["order"] == "24");
  CHECK(r.report["details"]["alpha_kernel_size"] == 8);
}

TEST_CASE("wreath discriminate parses element sets") {
  Result none = invoke({"wreath", "discriminate", "--group",
                        "product:cyclic:2xcyclic:2", "--target", "cyclic:2",
                        "--set", "all"});
  CHECK(none.code == 1);
  Result some = invoke({"wreath", "discriminate", "--group",
                        "product:cyclic:2xcyclic:2", "--target", "cyclic:2",
                        "--set", "(0,0);(1,0)"});
  CHECK(some.code == 0);
  CHECK(invoke({"wreath", "discriminate", "--group", "cyclic:4", "--target",
                "cyclic:4", "--set", "oops"})
            .code == 64);
}

TEST_CASE("words nielsen reduces and reports the move log") {
  Result r = invoke({"words", "nielsen", "--tuple", "x1 x2;x2", "--rank", "2"});
  CHECK(r.code == 0);
  CHECK(r.report["details"]["reduced"] ==
        nlohmann::json::array({"x1", "x2"}));
  CHECK(r.report["details"]["is_basis"] == true);
  CHECK(r.report["details"]["moves"].size() >= 1);

  Result nb = invoke({"words", "nielsen", "--tuple", "x1^2;x2", "--rank", "2"});
  CHECK(nb.report["details"]["is_basis"] == false);
}

TEST_CASE("identity scheme and member commands") {
  Result s = invoke({"identity", "scheme", "--group", "cyclic:8", "--outer",
                     "4", "--inner", "2"});
  CHECK(s.code == 0);
  CHECK(s.report["details"]["equivalent"] == true);

  Result m1 = invoke({"identity", "member", "--group", "sym:3", "--m", "3",
                      "--n", "2"});
  CHECK(m1.code == 0);
  Result m2 = invoke({"identity", "member", "--group", "sym:3", "--m", "2",
                      "--n", "2"});
  CHECK(m2.code == 1);
  Result m3 = invoke({"identity", "member", "--group", "q8", "--m", "2",
                      "--n", "2"});
  CHECK(m3.code == 0);
}

TEST_CASE("identity verbal lists small closures") {
  Result r = invoke({"identity", "verbal", "--group", "sym:3", "--word",
                     "x1^2"});
  CHECK(r.code == 0);
  CHECK(r.report["details"]["subgroup_order"] == 3);
  CHECK(r.report["details"]["elements"].size() == 3);
}
