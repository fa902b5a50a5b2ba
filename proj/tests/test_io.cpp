#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shamoduli/commands.hpp"
#include "shamoduli/error.hpp"
#include "shamoduli/io.hpp"

using namespace shamoduli;

namespace {

std::string fixture_path(const std::string& name) { return std::string(SHAMODULI_FIXTURES) + "/" + name + ".json"; }

RunConfig config_for(int n) {
  RunConfig cfg;
  cfg.n = n;
  return cfg;
}

}  // namespace

TEST_CASE("sha JSON round trip is byte identical") {
  for (const auto* name : {"two_triples", "quadruple_leaf", "quadruple_chain", "six_lines_quadruple", "six_lines_generic", "six_lines_chain"}) {
    Sha x = read_sha_file(fixture_path(name));
    std::string first = dump(to_json(x));
    Sha y = sha_from_json(parse_json(first));
    CHECK(x == y);
    CHECK(dump(to_json(y)) == first);
  }
  for (const auto& t : enumerate_combinatorial_types(6, WeightVector::ones(6), 2)) {
    std::string first = dump(to_json(t.sha));
    CHECK(dump(to_json(sha_from_json(parse_json(first)))) == first);
  }
}

TEST_CASE("malformed sha JSON is rejected") {
  Json j = to_json(read_sha_file(fixture_path("quadruple_leaf")));
  Json wrong_a = j;
  wrong_a["plane_models"][1]["a"] = Json::array({"1/3"});
  CHECK_THROWS_AS(sha_from_json(wrong_a), Error);
  Json wrong_marking = j;
  wrong_marking["tree"]["markings"] = Json::array({4, 5});
  CHECK_THROWS_AS(sha_from_json(wrong_marking), Error);
  Json float_s = j;
  float_s["plane_models"][0]["s"][0] = 0.5;
  CHECK_THROWS_AS(sha_from_json(float_s), Error);
  CHECK_THROWS_AS(parse_json("{not json"), Error);
}

TEST_CASE("rational lists") {
  CHECK(parse_rational_list("1, 1/2,-3/4") == RationalVector{1, Rational(1, 2), Rational(-3, 4)});
  CHECK(parse_int_list("1,2,3") == std::vector<int>{1, 2, 3});
  CHECK_THROWS_AS(parse_int_list("1,2/3"), Error);
  CHECK_THROWS_AS(parse_rational_list("1,,2"), Error);
}

TEST_CASE("building-set command") {
  auto cfg = config_for(5);
  cfg.weights = RationalVector(5, Rational(1));
  auto r = run_command("building-set", cfg);
  CHECK(r.result["count"] == 15);
  cfg.n = 6;
  cfg.weights = RationalVector(6, Rational(1));
  CHECK(run_command("building-set", cfg).result["count"] == 41);
  CHECK(run_command("building-set", config_for(6)).result["count"] == 0);
}

TEST_CASE("reports are deterministic and JSON round-trips") {
  for (const auto& name : command_names()) {
    RunConfig cfg = config_for(5);
    cfg.weights = RationalVector(5, Rational(1));
    if (name == "stable-replace") {
      cfg.sha_path = fixture_path("six_lines_quadruple");
      cfg.n = 6;
      cfg.weights.reset();
      cfg.I = std::vector<int>{1, 2, 3, 4};
    }
    if (name == "dual-graph" || name == "cycle-class") cfg.sha_path = fixture_path("quadruple_chain");
    if (name == "cycle-class") cfg.oracle = true;
    if (name == "h-locus") cfg.I = std::vector<int>{1, 2, 3};
    if (name == "family-check") cfg.trials = 10;
    std::string a = render(run_command(name, cfg), Format::Json);
    std::string b = render(run_command(name, cfg), Format::Json);
    CHECK_MESSAGE(a == b, name);
    CHECK_MESSAGE(dump(parse_json(a)) == a, name);
    CHECK_MESSAGE(a.find("microseconds") == std::string::npos, name);
  }
}

TEST_CASE("command results") {
  auto ex = run_command("exclusion", config_for(5));
  CHECK(ex.result["verdict"] == "INFEASIBLE");
  CHECK(render(ex, Format::Text).rfind("INFEASIBLE witness (3,4,5)", 0) == 0);

  RunConfig fam = config_for(7);
  fam.trials = 100;
  fam.seed = 42;
  fam.threads = 3;
  CHECK(render(run_command("family-check", fam), Format::Text).rfind("100/100 identities hold", 0) == 0);

  RunConfig dg = config_for(5);
  dg.sha_path = fixture_path("quadruple_leaf");
  auto dot = render(run_command("dual-graph", dg), Format::Dot);
  CHECK(dot.find("doublecircle") != std::string::npos);
  CHECK(dot.find("v0 -- v1") != std::string::npos);

  RunConfig cc = config_for(5);
  cc.sha_path = fixture_path("two_triples");
  cc.oracle = true;
  cc.m = std::vector<int>{1, 1, 1, 0, 0};
  auto r = run_command("cycle-class", cc);
  CHECK(r.result["coefficients"][0]["c"] == 1);
  CHECK(r.result["coefficients"][0]["oracle"] == 1);

  RunConfig st = config_for(5);
  st.weights = RationalVector(5, Rational(1));
  st.depth = 2;
  CHECK(run_command("strata", st).result["zero_dimensional"] == 20);

  RunConfig hl = config_for(7);
  hl.I = std::vector<int>{1, 2, 3, 4};
  CHECK(run_command("h-locus", hl).result["rank"] == 2);
}

TEST_CASE("errors carry exit codes") {
  try {
    run_command("exclusion", config_for(4));
    FAIL("expected BadN");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadN);
    CHECK(exit_code(e.code()) == 2);
  }
  RunConfig big = config_for(7);
  big.weights = RationalVector(7, Rational(1));
  big.budget = 5;
  try {
    run_command("strata", big);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(exit_code(e.code()) == 3);
  }
  CHECK_THROWS_AS(run_command("no-such-command", config_for(5)), Error);
}
