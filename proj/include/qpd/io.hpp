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

#ifndef QPD_IO_HPP
#define QPD_IO_HPP

#include <ostream>
#include <string>

#include "qpd/analysis.hpp"
#include "qpd/fockoracle.hpp"
#include "qpd/photstat.hpp"
#include "qpd/quasiprob.hpp"

namespace qpd {

/// Locale-independent decimal formatting with 17 significant digits.
std::string format_double(double v);

/// `re,im,value` rows, row-major over the real axis.
void write_phase_field_csv(std::ostream& os, const PhaseField& field);

/// `n,probability` rows.
void write_pnd_csv(std::ostream& os, const PndResult& pnd);

/// Flat JSON record {mean_n, g2, mandel_q, classification}.
std::string stat_summary_json(const StatSummary& summary,
                              const StatClass& cls);

std::string threshold_json(const ThresholdResult& result);

void write_sweep_csv(std::ostream& os, const SweepTable& table);
std::string sweep_json(const SweepTable& table);

/// Debug dump: `row,col,re,im` entries of a truncated density matrix.
void write_density_matrix_csv(std::ostream& os, const fock::DensityMatrix& dm);

}  // namespace qpd

#endif  // QPD_IO_HPP
