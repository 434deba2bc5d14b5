/**
 * This code is part of qclass.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qclass/process_io.hpp"
#include "qclass/report_io.hpp"
#include "qclass/scenarios.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw qclass::ParseError("cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Default tolerance, overridable through QCLASS_TOL; an explicit --tol
// always wins.
double env_tol() {
  if (const char *env = std::getenv("QCLASS_TOL")) {
    try {
      const double tol = std::stod(env);
      if (tol > 0) return tol;
    } catch (const std::exception &) {
    }
    std::cerr << "warning: ignoring invalid QCLASS_TOL value '" << env << "'\n";
  }
  return qclass::default_tol;
}

qclass::ReportFormat parse_format(const std::string &format) {
  if (format == "text") return qclass::ReportFormat::text;
  if (format == "json") return qclass::ReportFormat::json;
  throw qclass::ParseError("unknown format '" + format + "' (expected text or json)");
}

int emit_and_grade(const qclass::ClassicalityReport &report, const std::string &format) {
  std::cout << qclass::emit_report(report, parse_format(format));
  return report.all_pass() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"classicality diagnostics for multi-time quantum processes"};
  app.require_subcommand(1);

  std::string file;
  std::string format = "text";
  double tol = env_tol();
  std::vector<std::string> tests;
  std::vector<std::string> measure_at;
  std::string scenario_name;

  auto *validate = app.add_subcommand("validate", "check a process file against all invariants");
  validate->add_option("file", file, "JSON process description")->required();

  auto *probs = app.add_subcommand("probs", "print the joint outcome distribution");
  probs->add_option("file", file, "JSON process description")->required();
  probs->add_option("--measure-at", measure_at,
                    "times to measure at, e.g. 1,3 or t1,t3 (default: all)")
      ->delimiter(',');

  auto *check = app.add_subcommand("check", "run classicality criteria on a process file");
  check->add_option("file", file, "JSON process description")->required();
  check->add_option("--tests", tests,
                    "subset of kolmogorov,commutators,weak,absolute,inclusion,ncgd")
      ->delimiter(',');
  check->add_option("--tol", tol, "absolute tolerance for every verdict");
  check->add_option("--format", format, "text or json");

  auto *scenario = app.add_subcommand("scenario", "built-in processes");
  auto *scenario_list = scenario->add_subcommand("list", "list built-in scenarios");
  auto *scenario_run = scenario->add_subcommand("run", "analyze a built-in scenario");
  scenario_run->add_option("name", scenario_name, "scenario identifier")->required();
  scenario_run->add_option("--tol", tol, "absolute tolerance for every verdict");
  scenario_run->add_option("--format", format, "text or json");
  scenario->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? kExitPass : kExitInvalid;
  }

  try {
    if (validate->parsed()) {
      const qclass::ProcessFile parsed = qclass::parse_process_file(read_file(file), tol);
      const auto report = qclass::validate_process(parsed.process, tol);
      std::cout << "valid: " << parsed.process.name.c_str()
                << (parsed.process.name.empty() ? "" : " ") << "(dimension "
                << parsed.process.dim << ", " << parsed.process.times() << " times, "
                << (report.all_hermitian() ? "all" : "not all")
                << " Kraus operators Hermitian)\n";
      return kExitPass;
    }

    if (probs->parsed()) {
      const qclass::MarkovProcess process = qclass::parse_process(read_file(file), tol);
      std::set<int> times;
      for (std::string token : measure_at) {
        if (!token.empty() && (token.front() == 't' || token.front() == 'T')) {
          token.erase(token.begin());
        }
        try {
          times.insert(std::stoi(token));
        } catch (const std::exception &) {
          throw qclass::ParseError("--measure-at: cannot read time '" + token + "'");
        }
      }
      if (measure_at.empty()) {
        for (int t = 1; t <= process.times(); ++t) times.insert(t);
      }
      std::cout << qclass::emit_distribution(qclass::full_distribution(process, times));
      return kExitPass;
    }

    if (check->parsed()) {
      const qclass::ProcessFile parsed = qclass::parse_process_file(read_file(file), tol);
      qclass::AnalyzeConfig config = parsed.config(tol);
      config.checks = tests;
      return emit_and_grade(qclass::analyze(parsed.process, config), format);
    }

    if (scenario_list->parsed()) {
      for (const auto &id : qclass::scenario_ids()) {
        std::cout << id << "  -  " << qclass::make_scenario(id).summary << "\n";
      }
      return kExitPass;
    }

    if (scenario_run->parsed()) {
      qclass::Scenario s = qclass::make_scenario(scenario_name);
      s.config.tol = tol;
      return emit_and_grade(qclass::analyze(s.process, s.config), format);
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
