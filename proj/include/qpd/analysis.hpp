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

#ifndef QPD_ANALYSIS_HPP
#define QPD_ANALYSIS_HPP

#include <string>
#include <vector>

#include "qpd/states.hpp"

namespace qpd {

struct ThresholdResult {
  bool found = false;     ///< false: W(0) stays negative up to s_max
  double s_star = 0.0;
  double s_lo = 0.0, s_hi = 0.0;
  int iterations = 0;
  double w0_at_star = 0.0;
  bool multi_root_warning = false;  ///< sampled values were not monotone
};

/// Noise level at which the Wigner function at the phase-space origin
/// changes sign, located by bisection. Requires W_input(0) < 0; otherwise
/// throws Error("not_applicable").
ThresholdResult wigner_center_threshold(const StateSpec& spec, double s_max,
                                        double tol);

enum class SweepAxis { NTh, Lambda, S, M };
enum class SweepQuantity { W0, Q0, MandelQ, G2, PndPeak };

std::string axis_name(SweepAxis a);
std::string quantity_name(SweepQuantity q);
SweepAxis axis_from_name(const std::string& s);
SweepQuantity quantity_from_name(const std::string& s);

struct SweepTable {
  std::string axis;
  std::vector<double> axis_values;
  std::string quantity;
  std::vector<double> values;           // NaN marks an annotated gap
  std::vector<std::string> annotations; // empty string when the point is fine
};

/// Evaluates one quantity along one axis. The axis S varies the channel
/// noise (the template's stage is ignored for that axis); other axes vary
/// the state parameters at the template's stage. Per-point failures become
/// annotated gaps instead of aborting the sweep.
SweepTable sweep(const StateSpec& spec_template, const Stage& stage,
                 SweepAxis axis, const std::vector<double>& values,
                 SweepQuantity quantity);

enum class PoissonClass { Sub, Poissonian, Super };
enum class BunchingClass { Bunching, Antibunching };

struct StatClass {
  PoissonClass poisson;
  BunchingClass bunching;
};

std::string to_string(PoissonClass c);
std::string to_string(BunchingClass c);

StatClass classify_statistics(const StateSpec& spec, const Stage& stage);

}  // namespace qpd

#endif  // QPD_ANALYSIS_HPP
