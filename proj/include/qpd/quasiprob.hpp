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

#ifndef QPD_QUASIPROB_HPP
#define QPD_QUASIPROB_HPP

#include <string>
#include <vector>

#include "qpd/numkernel.hpp"
#include "qpd/states.hpp"

namespace qpd {

/// Ordering parameter of the characteristic-function family:
/// -1, 0, +1 select the Husimi Q, Wigner W and Glauber-Sudarshan P
/// distributions respectively.
enum class KappaOrder : int { Q = -1, W = 0, P = +1 };

inline double kappa_value(KappaOrder k) { return static_cast<double>(static_cast<int>(k)); }
KappaOrder kappa_from_int(int k);

struct PhaseGrid {
  double re_min, re_max, im_min, im_max;
  int n_re, n_im;

  void validate() const;
  double re_at(int i) const { return re_min + (re_max - re_min) * i / (n_re - 1); }
  double im_at(int j) const { return im_min + (im_max - im_min) * j / (n_im - 1); }
};

/// Sampled quasi-probability values, row-major over the real axis index.
struct PhaseField {
  PhaseGrid grid;
  std::vector<double> values;

  double at(int i, int j) const {
    return values[static_cast<size_t>(i) * grid.n_im + j];
  }
};

struct Admissibility {
  bool admissible = true;
  std::string reason;
};

/// Total function: reports whether every Gaussian-integral step of the
/// state's characteristic-function -> distribution pipeline converges for
/// this kappa. Inadmissible combinations make the distribution more
/// singular than a delta function.
Admissibility convergence_guard(const StateSpec& spec, const Stage& stage,
                                KappaOrder kappa);

/// kappa-ordered characteristic function chi(gamma, kappa).
/// chi(0, kappa) = 1 and chi(-gamma) = conj(chi(gamma)) for every state.
Complex char_fn(const StateSpec& spec, const Stage& stage, KappaOrder kappa,
                Complex gamma);

/// Pointwise quasi-probability P_kappa(alpha) under the d^2 gamma / pi
/// Fourier convention (vacuum Wigner value 2/pi at the origin).
/// Throws Error("singular_p") when the guard rejects the combination.
double quasiprob_point(const StateSpec& spec, const Stage& stage,
                       KappaOrder kappa, Complex alpha);

PhaseField quasiprob_grid(const StateSpec& spec, const Stage& stage,
                          KappaOrder kappa, const PhaseGrid& grid);

/// The exponential shift convention applied to the subtracted-family output
/// distribution: the ordering factor can be folded in as (kappa-1)/2 or as
/// (kappa+1)/2. Only the first reproduces the Fock-space values; the public
/// functions use it. The alternative remains callable so the validation
/// report can quote the deviation between the two.
enum class SubtractedOutputShift { HalfKappaMinusOne, HalfKappaPlusOne };

double quasiprob_point_variant(const StateSpec& spec, const Stage& stage,
                               KappaOrder kappa, Complex alpha,
                               SubtractedOutputShift shift);

}  // namespace qpd

#endif  // QPD_QUASIPROB_HPP
