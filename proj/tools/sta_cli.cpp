// sta: phase reports, verification suite and the Cayley table.
//
//   sta phases --scenario loop.json --steps 10000 --formula both --out loop.csv --format csv
//   sta verify [--tol 1e-9] [--json failures.json]
//   sta table
//
// Exit codes: 0 ok, 2 input error, 3 numeric failure, 4 verification failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sta/errors.hpp"
#include "sta/phase.hpp"
#include "sta/report.hpp"
#include "sta/scenarios.hpp"
#include "sta/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitVerify = 4;

struct PhasesArgs {
  std::string scenario;
  std::optional<int> steps;
  std::string formula = "both";
  std::string out;
  std::string format;
  bool proper_time = false;
  bool serial = false;
};

struct VerifyArgs {
  std::optional<double> tol;
  std::string json;
  bool inject_fault = false;
  bool serial = false;
};

sta::Formula parse_formula(const std::string& s) {
  if (s == "full") return sta::Formula::full;
  if (s == "simple") return sta::Formula::simple;
  return sta::Formula::both;
}

// Relative output paths go under $STA_OUTPUT_DIR when it is set.
std::filesystem::path output_path(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("STA_OUTPUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  return p;
}

int run_phases(const PhasesArgs& a) {
  sta::ScenarioSpec spec;
  try {
    spec = sta::load_scenario(a.scenario);
    if (a.steps) {
      spec.steps = *a.steps;
      sta::validate(spec);
    }
  } catch (const sta::ScenarioError& e) {
    std::cerr << a.scenario;
    if (e.line() > 0) std::cerr << ':' << e.line();
    if (!e.field().empty()) std::cerr << ": " << e.field();
    std::cerr << ": " << e.what() << '\n';
    return kExitInput;
  }

  std::string format = a.format;
  if (format.empty()) format = std::filesystem::path(a.out).extension() == ".json" ? "json" : "csv";

  sta::PhaseReport report;
  try {
    const auto traj = sta::make_trajectory(spec);
    sta::PhaseOptions opt;
    opt.steps = spec.steps;
    opt.formula = parse_formula(a.formula);
    opt.proper_time = a.proper_time;
    opt.parallel = !a.serial;
    report = sta::integrate_phases(*traj, opt);
    report.scenario = sta::scenario_to_json(spec);
  } catch (const sta::IntegrationError& e) {
    std::cerr << "integration failed at t = " << e.time() << ": " << e.what() << '\n';
    return kExitNumeric;
  } catch (const sta::Error& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }

  const std::string text = format == "json" ? sta::report_to_json(report) : sta::report_to_csv(report);
  if (a.out.empty() || a.out == "-") {
    std::cout << text;
    return kExitOk;
  }
  const auto path = output_path(a.out);
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) {
    std::cerr << "cannot write " << path.string() << '\n';
    return kExitInput;
  }
  return kExitOk;
}

int run_verify(const VerifyArgs& a) {
  sta::VerifyConfig cfg;
  cfg.tolerance = a.tol;
  cfg.parallel = !a.serial;
  if (a.inject_fault) cfg.table = sta::mutated_table();
  const auto groups = sta::run_verify(cfg);

  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  int checks = 0;
  int failed = 0;
  for (const auto& g : groups) {
    for (const auto& o : g.outcomes) {
      ++checks;
      std::printf("[%s] %2d %s: %s  %s=%.3e  %s=%.3e\n", o.passed ? "PASS" : "FAIL", g.id, g.name.c_str(),
                  o.name.c_str(), o.lower_bound ? "value" : "max_residual", o.max_residual,
                  o.lower_bound ? "bound" : "tol", o.tolerance);
      if (!o.passed) {
        ++failed;
        failures.push_back({{"group", g.id},
                            {"group_name", g.name},
                            {"check", o.name},
                            {"max_residual", o.max_residual},
                            {"tolerance", o.tolerance},
                            {"lower_bound", o.lower_bound}});
      }
    }
  }
  std::printf("%d/%d checks passed\n", checks - failed, checks);

  if (!a.json.empty()) {
    std::ofstream file(output_path(a.json), std::ios::binary);
    file << nlohmann::ordered_json{{"passed", failed == 0}, {"checks", checks}, {"failures", failures}}.dump(2)
         << '\n';
  }
  return failed == 0 ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spacetime-algebra phase calculator and verification suite"};
  app.require_subcommand(1);

  PhasesArgs phases;
  auto* cmd_phases = app.add_subcommand("phases", "Integrate the local phases of a scenario");
  cmd_phases->add_option("--scenario", phases.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  cmd_phases->add_option("--steps", phases.steps, "RK4 steps (overrides the scenario)");
  cmd_phases->add_option("--formula", phases.formula, "full, simple or both")
      ->check(CLI::IsMember({"full", "simple", "both"}));
  cmd_phases->add_option("--out", phases.out, "Output file ('-' or omitted: stdout)");
  cmd_phases->add_option("--format", phases.format, "csv or json (default: from --out extension)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd_phases->add_flag("--proper-time", phases.proper_time, "Report rates per proper time");
  cmd_phases->add_flag("--serial", phases.serial, "Use the serial sampling kernel");

  VerifyArgs verify;
  auto* cmd_verify = app.add_subcommand("verify", "Run the verification suite");
  cmd_verify->add_option("--tol", verify.tol, "Tolerance for every upper-bound check")->check(CLI::NonNegativeNumber);
  cmd_verify->add_option("--json", verify.json, "Write a machine-readable result file");
  cmd_verify->add_flag("--serial", verify.serial, "Run check groups sequentially");
  cmd_verify->add_flag("--inject-fault", verify.inject_fault)->group("");

  auto* cmd_table = app.add_subcommand("table", "Print the 16x16 signed Cayley table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (cmd_phases->parsed()) return run_phases(phases);
  if (cmd_verify->parsed()) return run_verify(verify);
  if (cmd_table->parsed()) {
    std::cout << sta::format_cayley_table(sta::kCayleyTable);
    return kExitOk;
  }
  return kExitInput;
}
