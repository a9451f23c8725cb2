#include "sheafhist/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sheafhist {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& why) {
  throw Error(ErrorKind::Scenario, "scenario field '" + where + "': " + why);
}

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

ScenarioDoc::CxDoc complex_at(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected a [re, im] pair");
  return {number_at(j[0], where), number_at(j[1], where)};
}

ScenarioDoc::KetDoc ket_at(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a nonempty array of [re, im] pairs");
  ScenarioDoc::KetDoc out;
  for (const auto& e : j) out.push_back(complex_at(e, where));
  return out;
}

ScenarioDoc::MatDoc matrix_at(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a nonempty array of rows");
  ScenarioDoc::MatDoc out;
  for (const auto& row : j) out.push_back(ket_at(row, where));
  return out;
}

std::vector<double> numbers_at(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : j) out.push_back(number_at(e, where));
  return out;
}

std::vector<std::string> names_at(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of names");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) fail(where, "expected an array of names");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::string string_at(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

const json* opt_field(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) fail(where, "unknown key '" + it.key() + "'");
  }
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

}  // namespace

ScenarioDoc parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Scenario,
                "scenario is not valid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::Scenario, "scenario must be a JSON object");
  check_keys(j, "(top level)",
             {"name", "dim", "kets", "unitaries", "projectors", "densities", "observables",
              "contexts", "evolution", "histories", "checks"});

  ScenarioDoc doc;
  doc.digest = fnv1a_hex(j.dump());

  const json* f = opt_field(j, "name");
  if (!f) fail("name", "missing");
  doc.name = string_at(*f, "name");

  f = opt_field(j, "dim");
  if (!f || !f->is_number_integer()) fail("dim", "expected an integer");
  doc.dim = f->get<int>();
  if (doc.dim < 1) fail("dim", "must be at least 1");

  if ((f = opt_field(j, "kets"))) {
    if (!f->is_object()) fail("kets", "expected an object of named kets");
    for (auto it = f->begin(); it != f->end(); ++it)
      doc.kets.emplace(it.key(), ket_at(it.value(), "kets." + it.key()));
  }
  auto read_matrices = [&](const char* key, std::map<std::string, ScenarioDoc::MatDoc>& into) {
    const json* g = opt_field(j, key);
    if (!g) return;
    if (!g->is_object()) fail(key, "expected an object of named matrices");
    for (auto it = g->begin(); it != g->end(); ++it)
      into.emplace(it.key(), matrix_at(it.value(), std::string(key) + "." + it.key()));
  };
  read_matrices("unitaries", doc.unitaries);
  read_matrices("projectors", doc.projectors);
  read_matrices("densities", doc.densities);

  if ((f = opt_field(j, "observables"))) {
    if (!f->is_object()) fail("observables", "expected an object of named observables");
    for (auto it = f->begin(); it != f->end(); ++it) {
      std::string where = "observables." + it.key();
      const json& o = it.value();
      if (!o.is_object()) fail(where, "expected an object");
      check_keys(o, where, {"matrix", "eigenvalues", "delta"});
      ScenarioDoc::ObservableDoc od;
      const json* g = opt_field(o, "matrix");
      if (!g) fail(where + ".matrix", "missing");
      od.matrix = matrix_at(*g, where + ".matrix");
      g = opt_field(o, "eigenvalues");
      if (!g) fail(where + ".eigenvalues", "missing");
      od.eigenvalues = numbers_at(*g, where + ".eigenvalues");
      g = opt_field(o, "delta");
      if (!g) fail(where + ".delta", "missing");
      od.delta = numbers_at(*g, where + ".delta");
      doc.observables.emplace(it.key(), std::move(od));
    }
  }

  if ((f = opt_field(j, "contexts"))) {
    if (!f->is_object()) fail("contexts", "expected an object of named generator lists");
    for (auto it = f->begin(); it != f->end(); ++it)
      doc.contexts.emplace(it.key(), names_at(it.value(), "contexts." + it.key()));
  }

  if ((f = opt_field(j, "evolution"))) {
    if (!f->is_object()) fail("evolution", "expected an object");
    check_keys(*f, "evolution", {"times", "steps"});
    ScenarioDoc::EvolutionDoc ed;
    const json* g = opt_field(*f, "times");
    if (!g) fail("evolution.times", "missing");
    ed.times = numbers_at(*g, "evolution.times");
    g = opt_field(*f, "steps");
    if (!g) fail("evolution.steps", "missing");
    ed.steps = names_at(*g, "evolution.steps");
    doc.evolution = std::move(ed);
  }

  if ((f = opt_field(j, "histories"))) {
    if (!f->is_object()) fail("histories", "expected an object of named histories");
    for (auto it = f->begin(); it != f->end(); ++it) {
      std::string where = "histories." + it.key();
      const json& o = it.value();
      if (!o.is_object()) fail(where, "expected an object");
      ScenarioDoc::HistoryDoc hd;
      if (opt_field(o, "join")) {
        check_keys(o, where, {"join"});
        hd.join = names_at(o["join"], where + ".join");
        if (hd.join.empty()) fail(where + ".join", "must name at least one history");
      } else {
        check_keys(o, where, {"times", "projectors"});
        const json* g = opt_field(o, "times");
        if (!g) fail(where + ".times", "missing");
        hd.times = numbers_at(*g, where + ".times");
        g = opt_field(o, "projectors");
        if (!g) fail(where + ".projectors", "missing");
        hd.projectors = names_at(*g, where + ".projectors");
      }
      doc.histories.emplace(it.key(), std::move(hd));
    }
  }

  if ((f = opt_field(j, "checks"))) {
    if (!f->is_object()) fail("checks", "expected an object");
    check_keys(*f, "checks", {"daseinize", "truth", "history_truth", "decohere"});
    const json* g = opt_field(*f, "daseinize");
    if (g) {
      if (!g->is_array()) fail("checks.daseinize", "expected an array");
      for (const auto& e : *g)
        doc.dasein_checks.push_back({string_at(e, "checks.daseinize")});
    }
    if ((g = opt_field(*f, "truth"))) {
      if (!g->is_array()) fail("checks.truth", "expected an array");
      for (const auto& e : *g) {
        if (!e.is_object()) fail("checks.truth", "expected objects with state and proposition");
        check_keys(e, "checks.truth", {"state", "proposition"});
        ScenarioDoc::TruthCheck tc;
        const json* h = opt_field(e, "state");
        if (!h) fail("checks.truth.state", "missing");
        tc.state = string_at(*h, "checks.truth.state");
        h = opt_field(e, "proposition");
        if (!h) fail("checks.truth.proposition", "missing");
        tc.proposition = string_at(*h, "checks.truth.proposition");
        doc.truth_checks.push_back(std::move(tc));
      }
    }
    if ((g = opt_field(*f, "history_truth"))) {
      if (!g->is_array()) fail("checks.history_truth", "expected an array");
      for (const auto& e : *g) {
        if (!e.is_object()) fail("checks.history_truth", "expected objects");
        check_keys(e, "checks.history_truth", {"state", "propositions", "times"});
        ScenarioDoc::HistoryTruthCheck hc;
        const json* h = opt_field(e, "state");
        if (!h) fail("checks.history_truth.state", "missing");
        hc.state = string_at(*h, "checks.history_truth.state");
        h = opt_field(e, "propositions");
        if (!h) fail("checks.history_truth.propositions", "missing");
        hc.propositions = names_at(*h, "checks.history_truth.propositions");
        if (hc.propositions.empty()) fail("checks.history_truth.propositions", "must be nonempty");
        if ((h = opt_field(e, "times"))) hc.times = numbers_at(*h, "checks.history_truth.times");
        doc.history_truth_checks.push_back(std::move(hc));
      }
    }
    if ((g = opt_field(*f, "decohere"))) {
      if (!g->is_object()) fail("checks.decohere", "expected an object");
      check_keys(*g, "checks.decohere", {"rho", "histories", "real_part_only"});
      ScenarioDoc::DecohereCheck dc;
      const json* h = opt_field(*g, "rho");
      if (!h) fail("checks.decohere.rho", "missing");
      dc.rho = string_at(*h, "checks.decohere.rho");
      h = opt_field(*g, "histories");
      if (!h) fail("checks.decohere.histories", "missing");
      dc.histories = names_at(*h, "checks.decohere.histories");
      if (dc.histories.empty()) fail("checks.decohere.histories", "must be nonempty");
      if ((h = opt_field(*g, "real_part_only"))) {
        if (!h->is_boolean()) fail("checks.decohere.real_part_only", "expected a boolean");
        dc.real_part_only = h->get<bool>();
      }
      doc.decohere_check = std::move(dc);
    }
  }

  return doc;
}

ScenarioDoc load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Scenario, "cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace sheafhist
