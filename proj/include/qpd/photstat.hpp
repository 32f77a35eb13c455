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

#ifndef QPD_PHOTSTAT_HPP
#define QPD_PHOTSTAT_HPP

#include <vector>

#include "qpd/states.hpp"

namespace qpd {

struct PndResult {
  std::vector<double> probabilities;  // indexed by n from 0
  double tail_bound = 0.0;            // residual mass beyond the last entry
};

struct StatSummary {
  double mean_n;
  double second_factorial_moment;  // <a+^2 a^2>
  double mandel_q;
  double g2;
};

/// Probability of finding n photons.
double pnd(const StateSpec& spec, const Stage& stage, int n);

/// Probabilities 0..n_max plus a geometric-majorization estimate of the
/// residual; probabilities + tail_bound sums to 1 within 1e-9 once n_max
/// reaches the distribution's geometric tail.
PndResult pnd_full(const StateSpec& spec, const Stage& stage, int n_max);

/// r-th factorial moment <a+^r a^r>; r up to 6.
double moment(const StateSpec& spec, const Stage& stage, int r);

double mandel_q(const StateSpec& spec, const Stage& stage);
double g2(const StateSpec& spec, const Stage& stage);
StatSummary stat_summary(const StateSpec& spec, const Stage& stage);

/// Evaluation point of the generating variable in the subtracted-thermal
/// output distribution: the two printed candidates are -1 and 0. Only one
/// reproduces the Fock-space diagonal; pnd() ships with that one, and the
/// other stays callable for the validation report.
enum class PstsOutputPndPoint { MinusOne, Zero };

double pnd_variant(const StateSpec& spec, const Stage& stage, int n,
                   PstsOutputPndPoint point);

/// Evaluation point of the second generating variable in the squeezed-added
/// photon-number kernel (candidates 0 and 1); same reporting purpose.
enum class PastsPndPoint { Zero, One };

double pasts_pnd_variant(const StateSpec& spec, const Stage& stage, int n,
                         PastsPndPoint point);

}  // namespace qpd

#endif  // QPD_PHOTSTAT_HPP
