// sheafhist CLI: run one engine command against a scenario file and print
// the report.  Exit code 0 on success, 1 on structured errors, 2 when a
// verification command finds failures.
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sheafhist/runner.hpp"

namespace {

const char* kind_name(sheafhist::ErrorKind k) {
  using sheafhist::ErrorKind;
  switch (k) {
    case ErrorKind::Scenario: return "scenario";
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::Invariant: return "invariant";
    case ErrorKind::Commutation: return "commutation";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::MissingName: return "missing-name";
  }
  return "unknown";
}

const char* describe(const std::string& cmd) {
  if (cmd == "contexts") return "list the closed context poset of a scenario";
  if (cmd == "daseinize") return "outer daseinization of declared propositions at every context";
  if (cmd == "truth") return "topos truth values of single-time propositions";
  if (cmd == "history-truth") return "truth values of temporally ordered propositions";
  if (cmd == "ks") return "enumerate global sections of the spectral presheaf";
  if (cmd == "decohere") return "decoherence functional and consistency of a history family";
  if (cmd == "verify-heyting") return "property-check the Heyting operations on subobjects";
  if (cmd == "verify-tensor") return "property-check the tensor laws on product subobjects";
  if (cmd == "verify-hpo") return "property-check tensor contexts and product daseinization";
  if (cmd == "demo-entangled") return "inspect the entangled-pair daseinization example";
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sheafhist: topos truth values for quantum propositions and histories"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  double epsilon = sheafhist::tolerance();
  bool exact = false;
  std::uint64_t max_sections = 1000000;
  int dim_limit = sheafhist::dimension_limit();

  for (const std::string& name : sheafhist::command_names()) {
    CLI::App* sub = app.add_subcommand(name, describe(name));
    sub->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    sub->add_option("--out", out_path, "also write the JSON report to this file");
    sub->add_option("--epsilon", epsilon, "numeric comparison tolerance");
    sub->add_flag("--exact", exact, "use exact rational arithmetic");
    sub->add_option("--max-sections", max_sections, "cap on the global-section search");
    sub->add_option("--dimension-limit", dim_limit, "largest allowed matrix dimension");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string cmd = app.get_subcommands().front()->get_name();

  sheafhist::tolerance() = epsilon;
  sheafhist::dimension_limit() = dim_limit;
  sheafhist::RunOptions opt;
  opt.exact = exact;
  opt.max_sections = max_sections;

  try {
    sheafhist::ScenarioDoc doc = sheafhist::load_scenario_file(scenario_path);
    sheafhist::RunOutcome out = exact ? sheafhist::run_command<sheafhist::Rat>(cmd, doc, opt)
                                      : sheafhist::run_command<double>(cmd, doc, opt);
    std::cout << sheafhist::render_report(out.report);
    if (!out_path.empty()) {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return 1;
      }
      f << sheafhist::report_to_json_text(out.report);
    }
    return out.failed ? 2 : 0;
  } catch (const sheafhist::Error& e) {
    std::cerr << "error (" << kind_name(e.kind) << "): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
