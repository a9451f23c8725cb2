#include <doctest.h>

#include <fstream>
#include <sstream>

#include "sheafhist/random.hpp"
#include "sheafhist/runner.hpp"

using namespace sheafhist;

namespace {

std::string fixture_path(const std::string& name) {
  return std::string(SCENARIO_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

const char* kMinimal = R"({
  "name": "tiny",
  "dim": 2,
  "kets": {"up": [[1, 0], [0, 0]]},
  "projectors": {"P": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]},
  "contexts": {"z": ["P"]},
  "checks": {"truth": [{"state": "up", "proposition": "P"}]}
})";

}  // namespace

TEST_CASE("every shipped scenario parses and realizes over both fields") {
  struct Expect {
    const char* file;
    int dim;
    int poset_elems;
  };
  const Expect table[] = {
      {"qubit-z.json", 2, 2},          {"qubit-zx.json", 2, 3},
      {"two-time-qubit.json", 2, 4},   {"singlet-entanglement.json", 4, 3},
      {"peres-mermin-dim4.json", 4, 16}, {"decoherence-z-basis.json", 2, 2},
  };
  for (const Expect& e : table) {
    CAPTURE(e.file);
    ScenarioDoc doc = load_scenario_file(fixture_path(e.file));
    CHECK(doc.dim == e.dim);
    CHECK(doc.digest.size() == 16);
    Scenario<double> s = realize_scenario<double>(doc);
    CHECK(s.space->contexts.order.n == e.poset_elems);
    Scenario<Rat> xs = realize_scenario<Rat>(doc);
    CHECK(xs.space->contexts.order.n == e.poset_elems);
  }
}

TEST_CASE("observables derive their delta projector from the spectrum") {
  ScenarioDoc doc = load_scenario_file(fixture_path("peres-mermin-dim4.json"));
  Scenario<double> s = realize_scenario<double>(doc);
  CHECK(mat_eq(s.projector("ZI"), diag_real<double>({1, 1, 0, 0})));
  CHECK(mat_eq(s.projector("IZ"), diag_real<double>({1, 0, 1, 0})));
  CHECK(mat_eq(s.projector("ZZ"), diag_real<double>({1, 0, 0, 1})));
  Scenario<Rat> xs = realize_scenario<Rat>(doc);
  CHECK(mat_eq(xs.projector("ZI"), diag_real<Rat>({1, 1, 0, 0})));
  CHECK(xs.projector("YY").at(0, 3).re == Rat(-1) / Rat(2));
}

TEST_CASE("the digest tracks content, not formatting") {
  std::string text = slurp(fixture_path("qubit-z.json"));
  ScenarioDoc a = parse_scenario(text);
  ScenarioDoc b = parse_scenario("\n  " + text + "\n\n");
  CHECK(a.digest == b.digest);

  std::string changed = text;
  size_t pos = changed.find("\"tilt\"");
  REQUIRE(pos != std::string::npos);
  changed.replace(pos, 6, "\"lean\"");
  CHECK(parse_scenario(changed).digest != a.digest);
}

TEST_CASE("parse errors carry positions and field names") {
  CHECK_THROWS_WITH_AS(parse_scenario("{\"name\": \"x\", "),
                       doctest::Contains("not valid JSON at byte"), Error);
  CHECK_THROWS_WITH_AS(parse_scenario("[1, 2]"), doctest::Contains("must be a JSON object"),
                       Error);
  CHECK_THROWS_WITH_AS(parse_scenario(R"({"name": "x", "dim": 2, "bogus": 1})"),
                       doctest::Contains("bogus"), Error);
  CHECK_THROWS_WITH_AS(parse_scenario(R"({"name": "x"})"), doctest::Contains("dim"), Error);
  CHECK_THROWS_WITH_AS(
      parse_scenario(R"({"name": "x", "dim": 2, "kets": {"v": [[1, 0], [0]]}})"),
      doctest::Contains("kets"), Error);

  std::string stray_check = kMinimal;
  size_t pos = stray_check.find("\"truth\"");
  REQUIRE(pos != std::string::npos);
  stray_check.insert(pos, R"("sanity": [],)");
  CHECK_THROWS_WITH_AS(parse_scenario(stray_check), doctest::Contains("sanity"), Error);
}

TEST_CASE("realization rejects inconsistent quantum data by name") {
  ScenarioDoc doc = parse_scenario(kMinimal);

  ScenarioDoc bad_ket = doc;
  bad_ket.kets["up"] = {{2, 0}, {0, 0}};
  CHECK_THROWS_WITH_AS(realize_scenario<double>(bad_ket), doctest::Contains("up"), Error);

  ScenarioDoc bad_proj = doc;
  bad_proj.projectors["P"] = {{{1, 0}, {1, 0}}, {{0, 0}, {0, 0}}};
  CHECK_THROWS_WITH_AS(realize_scenario<double>(bad_proj), doctest::Contains("P"), Error);

  ScenarioDoc bad_shape = doc;
  bad_shape.projectors["P"] = {{{1, 0}}};
  CHECK_THROWS_AS(realize_scenario<double>(bad_shape), Error);

  ScenarioDoc missing_gen = doc;
  missing_gen.contexts["z"] = {"Q"};
  CHECK_THROWS_WITH_AS(realize_scenario<double>(missing_gen), doctest::Contains("Q"), Error);

  ScenarioDoc clash = doc;
  clash.contexts["z"] = {"P", "Px"};
  clash.projectors["Px"] = {{{0.5, 0}, {0.5, 0}}, {{0.5, 0}, {0.5, 0}}};
  CHECK_THROWS_WITH_AS(realize_scenario<double>(clash),
                       doctest::Contains("do not commute"), Error);

  ScenarioDoc bad_spec = doc;
  bad_spec.observables["A"] = {{{{1, 0}, {0, 0}}, {{0, 0}, {-1, 0}}}, {1}, {1}};
  CHECK_THROWS_WITH_AS(realize_scenario<double>(bad_spec), doctest::Contains("A"), Error);

  ScenarioDoc bad_delta = doc;
  bad_delta.observables["A"] = {{{{1, 0}, {0, 0}}, {{0, 0}, {-1, 0}}}, {1, -1}, {2}};
  CHECK_THROWS_AS(realize_scenario<double>(bad_delta), Error);

  ScenarioDoc dup = doc;
  dup.observables["P"] = {{{{1, 0}, {0, 0}}, {{0, 0}, {-1, 0}}}, {1, -1}, {1}};
  CHECK_THROWS_WITH_AS(realize_scenario<double>(dup), doctest::Contains("P"), Error);
}

TEST_CASE("observable-derived projectors join the projector namespace") {
  ScenarioDoc doc = parse_scenario(kMinimal);
  doc.observables["A"] = {{{{1, 0}, {0, 0}}, {{0, 0}, {-1, 0}}}, {1, -1}, {-1}};
  Scenario<double> s = realize_scenario<double>(doc);
  CHECK(mat_eq(s.projector("A"), diag_real<double>({0, 1})));
  CHECK_THROWS_WITH_AS(s.projector("nope"), doctest::Contains("nope"), Error);
  CHECK_THROWS_WITH_AS(s.ket("nope"), doctest::Contains("nope"), Error);
}

TEST_CASE("histories resolve declared joins and reject unknown references") {
  ScenarioDoc doc = load_scenario_file(fixture_path("decoherence-z-basis.json"));
  Scenario<double> s = realize_scenario<double>(doc);
  CHECK(s.histories.count("flipped") == 1);
  CHECK(s.histories.at("flipped").terms.size() == 2);
  REQUIRE(s.evolution.has_value());
  CHECK(s.evolution->times.size() == 3);

  ScenarioDoc broken = doc;
  broken.histories["oops"].join = {"up_up", "missing"};
  CHECK_THROWS_WITH_AS(realize_scenario<double>(broken), doctest::Contains("missing"), Error);

  ScenarioDoc bad_step = doc;
  bad_step.evolution->steps[0] = "gone";
  CHECK_THROWS_WITH_AS(realize_scenario<double>(bad_step), doctest::Contains("gone"), Error);
}

TEST_CASE("reports round-trip through their JSON text") {
  ScenarioDoc doc = load_scenario_file(fixture_path("qubit-z.json"));
  RunOutcome out = run_command<double>("truth", doc, RunOptions{});
  CHECK_FALSE(out.failed);
  CHECK(out.report["status"] == "ok");
  CHECK(out.report["digest"] == doc.digest);
  CHECK(out.report["mode"] == "float");

  std::string text = report_to_json_text(out.report);
  Report back = Report::parse(text);
  CHECK(back == out.report);
  CHECK(report_to_json_text(back) == text);

  std::string rendered = render_report(out.report);
  CHECK(rendered == render_report(out.report));
  CHECK(rendered.find("sheafhist truth") != std::string::npos);
  CHECK(rendered.find("status: ok") != std::string::npos);
  CHECK(rendered.find(doc.digest) != std::string::npos);
}

TEST_CASE("exact and floating runs reach the same verdicts") {
  struct Pair {
    const char* file;
    const char* command;
  };
  const Pair runs[] = {
      {"qubit-z.json", "truth"},           {"qubit-z.json", "daseinize"},
      {"qubit-zx.json", "truth"},          {"qubit-zx.json", "contexts"},
      {"two-time-qubit.json", "history-truth"}, {"singlet-entanglement.json", "truth"},
      {"singlet-entanglement.json", "demo-entangled"}, {"peres-mermin-dim4.json", "ks"},
      {"decoherence-z-basis.json", "decohere"},
  };
  for (const Pair& r : runs) {
    CAPTURE(r.file);
    CAPTURE(r.command);
    ScenarioDoc doc = load_scenario_file(fixture_path(r.file));
    RunOptions fopt, xopt;
    xopt.exact = true;
    RunOutcome f = run_command<double>(r.command, doc, fopt);
    RunOutcome x = run_command<Rat>(r.command, doc, xopt);
    CHECK(f.failed == x.failed);
    CHECK(f.report["status"] == x.report["status"]);
    if (std::string(r.command) == "ks") {
      CHECK(f.report["results"]["sections"] == 0);
      CHECK(x.report["results"]["sections"] == 0);
    }
    if (std::string(r.command) == "decohere") {
      CHECK(f.report["results"]["consistent"] == x.report["results"]["consistent"]);
      const Report& fp = f.report["results"]["probabilities"];
      const Report& xp = x.report["results"]["probabilities"];
      REQUIRE(fp.size() == xp.size());
      for (size_t i = 0; i < fp.size(); ++i)
        CHECK(fp[i].get<double>() == doctest::Approx(xp[i].get<double>()).epsilon(1e-12));
    }
  }
}

TEST_CASE("commands that need missing declarations fail as scenario errors") {
  ScenarioDoc doc = load_scenario_file(fixture_path("qubit-z.json"));
  CHECK_THROWS_WITH_AS(run_command<double>("decohere", doc, RunOptions{}),
                       doctest::Contains("no decohere check"), Error);
  CHECK_THROWS_WITH_AS(run_command<double>("history-truth", doc, RunOptions{}),
                       doctest::Contains("history_truth"), Error);
  CHECK_THROWS_WITH_AS(run_command<double>("unknown-cmd", doc, RunOptions{}),
                       doctest::Contains("unknown-cmd"), Error);
}

TEST_CASE("mutated scenario text never escapes the error type") {
  std::string base = slurp(fixture_path("qubit-z.json"));
  Rng rng(81);
  int parsed = 0, rejected = 0;
  for (int t = 0; t < 200; ++t) {
    std::string text = base;
    switch (rng() % 4) {
      case 0:
        text = text.substr(0, rng() % text.size());
        break;
      case 1:
        text[rng() % text.size()] = static_cast<char>(rng() % 256);
        break;
      case 2:
        text.insert(rng() % text.size(), 1, static_cast<char>("{}[],:\"0"[rng() % 8]));
        break;
      default:
        text.erase(rng() % text.size(), 1 + rng() % 5);
        break;
    }
    try {
      ScenarioDoc doc = parse_scenario(text);
      Scenario<double> s = realize_scenario<double>(doc);
      ++parsed;
    } catch (const Error&) {
      ++rejected;
    }
  }
  CHECK(parsed + rejected == 200);
  CHECK(rejected > 100);
}
