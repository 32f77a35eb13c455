// Copyright 2026 The qpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpd/io.hpp"

#include <charconv>
#include <cmath>

#include <json.hpp>

namespace qpd {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_phase_field_csv(std::ostream& os, const PhaseField& field) {
  os << "re,im,value\n";
  for (int i = 0; i < field.grid.n_re; ++i)
    for (int j = 0; j < field.grid.n_im; ++j)
      os << format_double(field.grid.re_at(i)) << ','
         << format_double(field.grid.im_at(j)) << ','
         << format_double(field.at(i, j)) << '\n';
}

void write_pnd_csv(std::ostream& os, const PndResult& pnd) {
  os << "n,probability\n";
  for (size_t n = 0; n < pnd.probabilities.size(); ++n)
    os << n << ',' << format_double(pnd.probabilities[n]) << '\n';
}

std::string stat_summary_json(const StatSummary& summary,
                              const StatClass& cls) {
  nlohmann::ordered_json j;
  j["mean_n"] = summary.mean_n;
  j["second_factorial_moment"] = summary.second_factorial_moment;
  j["g2"] = summary.g2;
  j["mandel_q"] = summary.mandel_q;
  j["classification"] =
      to_string(cls.poisson) + "," + to_string(cls.bunching);
  return j.dump(2);
}

std::string threshold_json(const ThresholdResult& r) {
  nlohmann::ordered_json j;
  j["found"] = r.found;
  if (r.found) {
    j["s_star"] = r.s_star;
    j["bracket"] = {r.s_lo, r.s_hi};
    j["iterations"] = r.iterations;
    j["w0_at_star"] = r.w0_at_star;
  }
  j["multi_root_warning"] = r.multi_root_warning;
  return j.dump(2);
}

void write_sweep_csv(std::ostream& os, const SweepTable& table) {
  os << table.axis << ',' << table.quantity << ",annotation\n";
  for (size_t i = 0; i < table.axis_values.size(); ++i)
    os << format_double(table.axis_values[i]) << ','
       << format_double(table.values[i]) << ',' << table.annotations[i]
       << '\n';
}

std::string sweep_json(const SweepTable& table) {
  nlohmann::ordered_json j;
  j["axis"] = table.axis;
  j["quantity"] = table.quantity;
  j["axis_values"] = table.axis_values;
  nlohmann::ordered_json vals = nlohmann::ordered_json::array();
  for (size_t i = 0; i < table.values.size(); ++i) {
    if (std::isnan(table.values[i]))
      vals.push_back(nullptr);
    else
      vals.push_back(table.values[i]);
  }
  j["values"] = vals;
  j["annotations"] = table.annotations;
  return j.dump(2);
}

void write_density_matrix_csv(std::ostream& os, const fock::DensityMatrix& dm) {
  os << "row,col,re,im\n";
  for (int i = 0; i < dm.cutoff(); ++i)
    for (int j = 0; j < dm.cutoff(); ++j)
      os << i << ',' << j << ',' << format_double(dm.rho(i, j).real()) << ','
         << format_double(dm.rho(i, j).imag()) << '\n';
}

}  // namespace qpd
