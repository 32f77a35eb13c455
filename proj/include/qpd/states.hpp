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

#ifndef QPD_STATES_HPP
#define QPD_STATES_HPP

#include <string>

#include "qpd/errors.hpp"

namespace qpd {

/// The five state families: photon-added thermal, photon-subtracted thermal,
/// photon-added k-filtered thermal, and the photon-added / photon-subtracted
/// squeezed thermal states.
enum class StateFamily { Pats, Psts, Pakfts, Pasts, Pssts };

std::string family_name(StateFamily f);
StateFamily family_from_name(const std::string& name);

struct StateSpec {
  StateFamily variant = StateFamily::Pats;
  double n_th = 0.0;   ///< mean thermal photon number
  int m = 0;           ///< photons added or subtracted
  int k = 0;           ///< filtered Fock index (Pakfts only)
  double lambda = 0.0; ///< squeezing parameter (squeezed variants only)

  bool is_squeezed() const {
    return variant == StateFamily::Pasts || variant == StateFamily::Pssts;
  }
  bool is_subtracted() const {
    return variant == StateFamily::Psts || variant == StateFamily::Pssts;
  }

  /// Throws Error("invalid_state", ...) on out-of-domain parameters,
  /// including the degenerate subtracted-vacuum and vanishing-filter cases.
  void validate() const;
};

enum class StageKind { Input, Output };

/// Input state, or the channel output with noise parameter s. An Output
/// stage with s = 0 reproduces Input results everywhere downstream.
struct Stage {
  StageKind kind = StageKind::Input;
  double s = 0.0;

  static Stage input() { return {StageKind::Input, 0.0}; }
  static Stage output(double s);

  double noise() const { return kind == StageKind::Output ? s : 0.0; }
};

struct ThermalCoeffs {
  double A;  ///< 1/(1+n_th)
  double q;  ///< 1 - A = n_th/(1+n_th), the Boltzmann ratio
};

struct SqueezeCoeffs {
  double A_s;  ///< n_th^2 + (2 n_th + 1) cosh^2(lambda)
  double B;    ///< n_th (n_th + 1) / A_s
  double C;    ///< (2 n_th + 1) sinh(2 lambda) / (2 A_s)
  double X;    ///< 1 - B
};

ThermalCoeffs thermal_coeffs(double n_th);

/// Also checks X^2 - C^2 > 0, which holds for all physical parameters.
SqueezeCoeffs squeeze_coeffs(double n_th, double lambda);

/// Trace of the family's unnormalized kernel operator. Positive for every
/// valid spec; invalid specs throw.
double normalization(const StateSpec& spec);

/// The two candidate evaluation conventions for the squeezed-added-state
/// normalization kernel. `Reflected` differentiates (X^2-C^2)^(-1/2) at
/// X = 1-B with an alternating sign; `DirectAtB` differentiates at B with
/// no sign. Only one of them reproduces the Fock-space trace; the public
/// normalization() uses that one. Both stay callable for the validation
/// report.
enum class PastsNormForm { Reflected, DirectAtB };

double normalization_variant(const StateSpec& spec, PastsNormForm form);

}  // namespace qpd

#endif  // QPD_STATES_HPP
