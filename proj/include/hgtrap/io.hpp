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

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "hgtrap/budget.hpp"
#include "hgtrap/master_equation.hpp"

namespace hgtrap {

using Json = nlohmann::ordered_json;

/// Every number leaves the program with 12 significant digits.
std::string format_number(double v);
double round_sig(double v);

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

std::string to_csv(const Table& t);
/// Array of row objects keyed by column name.
Json to_json(const Table& t);

/// Rounds every floating-point value in place.
Json rounded(Json j);

/// Register basis labels "00", "01", ... (first ion first).
std::vector<std::string> basis_labels(int qubits);

/// Time series: time_us, P_<bits>, n_<mode>, alpha_re_<mode>, alpha_im_<mode>, theta_rad.
Table timeseries_table(const SimResult& r);
Json to_json(const SimResult& r);
Json matrix_json(const Eigen::MatrixXcd& m);

Json to_json(const ErrorBudget& b);

/// Writes text to path, creating parent directories. Throws std::runtime_error.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace hgtrap
