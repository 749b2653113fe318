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


#include "hgtrap/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hgtrap {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round_sig(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_number(v).c_str(), nullptr);
}

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row has the wrong width");
  rows.push_back(std::move(row));
}

namespace {

std::string cell_text(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return format_number(*d);
  if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

Json cell_json(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return round_sig(*d);
  if (auto i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

}  // namespace

std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << "\n";
  }
  return os.str();
}

Json to_json(const Table& t) {
  Json out = Json::array();
  for (const auto& row : t.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
    out.push_back(std::move(obj));
  }
  return out;
}

Json rounded(Json j) {
  if (j.is_number_float()) return round_sig(j.get<double>());
  if (j.is_array() || j.is_object())
    for (auto& v : j) v = rounded(std::move(v));
  return j;
}

std::vector<std::string> basis_labels(int qubits) {
  std::vector<std::string> out;
  for (int i = 0; i < (1 << qubits); ++i) {
    std::string s;
    for (int q = qubits - 1; q >= 0; --q) s += (i >> q) & 1 ? '1' : '0';
    out.push_back(s);
  }
  return out;
}

Table timeseries_table(const SimResult& r) {
  Table t;
  t.columns.push_back("time_us");
  const auto labels = basis_labels(static_cast<int>(r.ions.size()));
  for (const auto& l : labels) t.columns.push_back("P_" + l);
  for (int m : r.modes) t.columns.push_back("n_" + std::to_string(m));
  for (int m : r.modes) {
    t.columns.push_back("alpha_re_" + std::to_string(m));
    t.columns.push_back("alpha_im_" + std::to_string(m));
  }
  t.columns.push_back("theta_rad");
  for (std::size_t i = 0; i < r.time.size(); ++i) {
    std::vector<Cell> row{r.time[i] * 1e6};
    for (double p : r.populations[i]) row.emplace_back(p);
    for (double n : r.mode_occupation[i]) row.emplace_back(n);
    for (const auto& a : r.displacement[i]) {
      row.emplace_back(a.real());
      row.emplace_back(a.imag());
    }
    row.emplace_back(r.two_qubit_phase[i]);
    t.add(std::move(row));
  }
  return t;
}

Json matrix_json(const Eigen::MatrixXcd& m) {
  Json re = Json::array(), im = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json rr = Json::array(), ii = Json::array();
    for (int j = 0; j < m.cols(); ++j) {
      rr.push_back(round_sig(m(i, j).real()));
      ii.push_back(round_sig(m(i, j).imag()));
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return Json{{"re", re}, {"im", im}};
}

Json to_json(const SimResult& r) {
  Json j;
  Json ions = Json::array();
  for (int i : r.ions) ions.push_back(i + 1);
  j["ions"] = ions;
  j["modes"] = r.modes;
  j["basis"] = basis_labels(static_cast<int>(r.ions.size()));
  Json time = Json::array();
  for (double t : r.time) time.push_back(t * 1e6);
  j["time_us"] = time;
  j["populations"] = r.populations;
  j["mode_occupation"] = r.mode_occupation;
  Json alpha = Json::array();
  for (const auto& row : r.displacement) {
    Json a = Json::array();
    for (const auto& z : row) a.push_back(Json::array({z.real(), z.imag()}));
    alpha.push_back(std::move(a));
  }
  j["alpha"] = alpha;
  j["theta_rad"] = r.two_qubit_phase;
  j["qubit_state"] = matrix_json(r.qubit_state);
  const TraceLog& l = r.trace_log;
  j["trace_log"] = {{"max_trace_error", l.max_trace_error}, {"min_eigenvalue", l.min_eigenvalue},
                    {"final_purity", l.final_purity},       {"steps", l.steps},
                    {"shots", l.shots},                     {"dimension", l.dimension},
                    {"pure_state", l.pure_state},           {"fock_levels", l.fock_levels}};
  return rounded(std::move(j));
}

Json to_json(const ErrorBudget& b) {
  Json j;
  j["gate_counts"] = b.gate_counts;
  Json entries = Json::object();
  for (const auto& e : b.entries)
    entries[std::string(to_string(e.source))] = {
        {"enabled", e.enabled}, {"per_gate", e.error}, {"single_gate", e.single_gate}, {"fidelity", e.fidelity}};
  j["entries"] = entries;
  j["sum"] = b.sum;
  j["full_model"] = b.full_model;
  j["full_model_exponential"] = b.full_exponential;
  j["full_single_gate"] = b.full_single_gate;
  j["gap"] = b.gap;
  j["full_fidelity"] = b.full_fidelity;
  j["ideal_fidelity"] = b.ideal_fidelity;
  j["calibrated_sdf_khz"] = to_khz(b.calibrated_omega);
  j["residual_displacement"] = b.residual_displacement;
  return rounded(std::move(j));
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("error writing " + path.string());
}

}  // namespace hgtrap
