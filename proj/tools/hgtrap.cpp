// Copyright 2026 The hgtrap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "hgtrap/config.hpp"
#include "hgtrap/errors.hpp"
#include "hgtrap/runner.hpp"

namespace {

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kNumeric = 3 };

// Prints the nested chain and classifies the innermost error.
int report_error(const std::exception& e, int depth = 0) {
  std::cerr << std::string(2 * depth, ' ') << (depth ? "caused by: " : "error: ") << e.what() << "\n";
  try {
    std::rethrow_if_nested(e);
  } catch (const std::exception& inner) {
    return report_error(inner, depth + 1);
  }
  if (dynamic_cast<const hgtrap::InvalidConfig*>(&e) || dynamic_cast<const std::invalid_argument*>(&e)) return kConfig;
  if (dynamic_cast<const hgtrap::NumericError*>(&e) || dynamic_cast<const hgtrap::TruncationError*>(&e) ||
      dynamic_cast<const hgtrap::IntegratorError*>(&e) || dynamic_cast<const hgtrap::FitError*>(&e) ||
      dynamic_cast<const hgtrap::ConditioningError*>(&e) || dynamic_cast<const hgtrap::DegenerateGate*>(&e) ||
      dynamic_cast<const hgtrap::UnstableConfiguration*>(&e))
    return kNumeric;
  return kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trapped-ion chain simulator for structured-light gates"};
  app.set_version_flag("--version", hgtrap::version_string());
  app.require_subcommand(1);

  std::string config, out = "out", format = "csv";
  long long seed = -1;
  bool dry_run = false, quiet = false;

  const std::pair<const char*, const char*> commands[] = {
      {"modes", "equilibrium positions and axial normal modes"},
      {"beam", "transverse beam profile, widths and crosstalk"},
      {"spectrum", "weak-probe excitation spectrum"},
      {"sdf", "single-ion state-dependent force and thermometry"},
      {"gate", "entangling gate time evolution"},
      {"bell", "Bell-state fidelity from populations and parity"},
      {"repeat", "fidelity and pair parities after repeated gates"},
      {"sweep", "Bell fidelity versus chain length"},
      {"budget", "per-source error budget"}};
  for (auto [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "scenario file (YAML)")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "random seed (overrides the file)")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", out, "output directory")->capture_default_str();
    sub->add_option("--format", format, "table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_flag("--dry-run", dry_run, "validate and print the canonical scenario");
    sub->add_flag("--quiet", quiet, "do not print metrics");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version exit 0; every other parse error is an argument error.
    return app.exit(e) == 0 ? kOk : kConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    hgtrap::Scenario sc = hgtrap::parse_config(config);
    if (hgtrap::subcommand_name(sc.kind) != command)
      throw hgtrap::InvalidConfig("config kind '" + std::string(hgtrap::to_string(sc.kind)) + "' belongs to '" +
                                  std::string(hgtrap::subcommand_name(sc.kind)) + "', not '" + command + "'");
    if (seed >= 0) sc.seed = static_cast<std::uint64_t>(seed);
    if (dry_run) {
      std::cout << hgtrap::emit_config(sc);
      return kOk;
    }
    hgtrap::RunOptions opts;
    opts.out_dir = out;
    opts.format = hgtrap::parse_output_format(format);
    const hgtrap::RunReport report = hgtrap::run(sc, opts);
    if (!quiet) {
      for (const auto& [key, value] : report.metrics.items()) std::cout << key << " = " << value.dump() << "\n";
      std::cout << "wrote";
      for (const auto& f : report.manifest) std::cout << " " << f;
      std::cout << " report.json to " << out << " in " << hgtrap::format_number(report.wall_time) << " s\n";
    }
  } catch (const std::exception& e) {
    return report_error(e);
  }
  return kOk;
}
