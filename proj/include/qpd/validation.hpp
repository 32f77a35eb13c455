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

#ifndef QPD_VALIDATION_HPP
#define QPD_VALIDATION_HPP

#include <ostream>
#include <string>
#include <vector>

#include "qpd/states.hpp"

namespace qpd::validation {

struct LatticePoint {
  StateSpec spec;
  Stage stage;
};

/// Family x stage x parameter grid used by the validation suites:
/// stages {input, output s in {0.3, 1}}, n_th in {0.1, 0.5, 1},
/// m in {0, 1, 2}, lambda in {0, 0.2, 0.4}, k in {0, 1, 2} where applicable.
std::vector<LatticePoint> full_lattice();

/// A fast subsample of the full lattice.
std::vector<LatticePoint> spot_lattice();

struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double max_dev = 0.0;
  long points = 0;
  std::string worst_context;

  bool pass() const { return max_dev <= tolerance; }
  void update(double dev, const std::string& context);
};

/// One evaluation-convention arbitration: both algebraic variants measured
/// against the Fock oracle; the accepted one must win by three orders of
/// magnitude or more.
struct ArbitrationRecord {
  std::string name;
  std::string accepted;
  std::string rejected;
  double accepted_dev = 0.0;
  double rejected_dev = 0.0;

  bool separated() const {
    return rejected_dev >= 1e3 * std::max(accepted_dev, 1e-300);
  }
};

struct Report {
  std::vector<CheckResult> checks;
  std::vector<ArbitrationRecord> arbitration;

  bool all_pass() const;
};

enum class Level { Spot, Full };

struct Options {
  int threads = 0;        ///< <= 0 picks the hardware count
  int cutoff_override = 0;    ///< > 0 pins the oracle cutoff
  int quad_order_override = 0;  ///< > 0 pins the channel quadrature order
};

/// Runs the closed-form-vs-oracle lattice, the normalization suite and the
/// convention arbitrations.
Report run_validation(Level level, const Options& options = {});

void print_report(std::ostream& os, const Report& report);

}  // namespace qpd::validation

#endif  // QPD_VALIDATION_HPP
