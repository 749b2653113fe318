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


#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgtrap/config.hpp"
#include "hgtrap/io.hpp"

namespace hgtrap {

enum class OutputFormat { csv, json };
OutputFormat parse_output_format(std::string_view name);

struct RunOptions {
  std::filesystem::path out_dir = "out";
  OutputFormat format = OutputFormat::csv;
  std::optional<std::uint64_t> seed;  ///< overrides the scenario seed
  bool write = true;                  ///< false skips all file output
};

struct RunReport {
  std::string kind;
  std::string name;
  std::string config;  ///< canonical form of the scenario that ran
  std::string version;
  std::string git;
  double wall_time = 0.0;  ///< s
  std::optional<std::uint64_t> seed;
  int workers = 1;
  std::string kernels;
  std::vector<std::string> manifest;  ///< written files, relative to out_dir
  Json metrics = Json::object();
};

/// Scenario failure; the module error that caused it is nested.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs a validated scenario, writes its outputs and report.json under
/// options.out_dir and returns the report. Throws ScenarioError with the
/// originating exception nested.
RunReport run(const Scenario& scenario, const RunOptions& options = {});

Json to_json(const RunReport& report);

std::string version_string();

}  // namespace hgtrap
