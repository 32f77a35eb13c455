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

#include "qpd/states.hpp"

#include <cmath>

#include "qpd/numkernel.hpp"

namespace qpd {

namespace {
constexpr int kMaxAddSubtract = 20;  // factorial growth bound for the nested sums
}

std::string family_name(StateFamily f) {
  switch (f) {
    case StateFamily::Pats: return "pats";
    case StateFamily::Psts: return "psts";
    case StateFamily::Pakfts: return "pakfts";
    case StateFamily::Pasts: return "pasts";
    case StateFamily::Pssts: return "pssts";
  }
  throw Error("invalid_state", "unknown family");
}

StateFamily family_from_name(const std::string& name) {
  if (name == "pats") return StateFamily::Pats;
  if (name == "psts") return StateFamily::Psts;
  if (name == "pakfts") return StateFamily::Pakfts;
  if (name == "pasts") return StateFamily::Pasts;
  if (name == "pssts") return StateFamily::Pssts;
  throw Error("invalid_state", "unknown state family: " + name);
}

void StateSpec::validate() const {
  if (!(n_th >= 0.0) || !std::isfinite(n_th))
    throw Error("invalid_state", "n_th must be finite and >= 0");
  if (m < 0 || m > kMaxAddSubtract)
    throw Error("invalid_state", "m must be in [0, 20]");
  if (k < 0 || k > kMaxAddSubtract)
    throw Error("invalid_state", "k must be in [0, 20]");
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw Error("invalid_state", "lambda must be finite and >= 0");
  if (variant != StateFamily::Pakfts && k != 0)
    throw Error("invalid_state", "k applies to the filtered family only");
  if (!is_squeezed() && lambda != 0.0)
    throw Error("invalid_state", "lambda applies to squeezed variants only");
  if (is_subtracted() && n_th == 0.0 && m > 0)
    throw Error("zero_norm", "photon subtraction from the vacuum state");
  if (variant == StateFamily::Pakfts) {
    if (k > 0 && n_th == 0.0)
      throw Error("invalid_state", "filtered weight vanishes at n_th = 0");
    if (k == 0 && n_th == 0.0)
      throw Error("zero_norm", "filtering the vacuum component of the vacuum");
  }
}

Stage Stage::output(double s) {
  if (!(s >= 0.0) || !std::isfinite(s))
    throw Error("invalid_state", "noise parameter s must be finite and >= 0");
  return {StageKind::Output, s};
}

ThermalCoeffs thermal_coeffs(double n_th) {
  if (!(n_th >= 0.0) || !std::isfinite(n_th))
    throw Error("invalid_state", "n_th must be finite and >= 0");
  const double A = 1.0 / (1.0 + n_th);
  return {A, n_th / (1.0 + n_th)};
}

SqueezeCoeffs squeeze_coeffs(double n_th, double lambda) {
  if (!(n_th >= 0.0) || !(lambda >= 0.0))
    throw Error("invalid_state", "squeeze_coeffs needs n_th >= 0 and lambda >= 0");
  const double ch = std::cosh(lambda);
  const double A_s = n_th * n_th + (2.0 * n_th + 1.0) * ch * ch;
  const double B = n_th * (n_th + 1.0) / A_s;
  const double C = (2.0 * n_th + 1.0) * std::sinh(2.0 * lambda) / (2.0 * A_s);
  const double X = 1.0 - B;
  if (!(X * X - C * C > 0.0))
    throw Error("coefficient_degeneracy", "X^2 - C^2 <= 0 (internal consistency)");
  return {A_s, B, C, X};
}

namespace {

double pasts_norm(double n_th, int m, double lambda, PastsNormForm form) {
  const SqueezeCoeffs sc = squeeze_coeffs(n_th, lambda);
  const double point = (form == PastsNormForm::Reflected) ? sc.X : sc.B;
  Jet1 v = Jet1::variable(point, m);
  Jet1 kern = jet_inv_sqrt(jet_product(v, v) - Jet1::constant(sc.C * sc.C, m));
  double val = (kern.derivative(m) / std::sqrt(sc.A_s)).real();
  if (form == PastsNormForm::Reflected && (m % 2) != 0) val = -val;
  return val;
}

double pssts_norm(double n_th, int m, double lambda) {
  const SqueezeCoeffs sc = squeeze_coeffs(n_th, lambda);
  Jet1 u = Jet1::variable(1.0, m);
  Jet1 omBu = Jet1::constant(1.0, m) - Complex(sc.B) * u;
  Jet1 kern = jet_inv_sqrt(jet_product(omBu, omBu) -
                           Complex(sc.C * sc.C) * jet_product(u, u));
  return (kern.derivative(m) / std::sqrt(sc.A_s)).real();
}

}  // namespace

double normalization(const StateSpec& spec) {
  spec.validate();
  const ThermalCoeffs tc = thermal_coeffs(spec.n_th);
  switch (spec.variant) {
    case StateFamily::Pats:
      return factorial(spec.m) * std::pow(1.0 + spec.n_th, spec.m + 1);
    case StateFamily::Psts:
      return factorial(spec.m) * std::pow(spec.n_th, spec.m + 1);
    case StateFamily::Pakfts: {
      const double val =
          factorial(spec.m) * std::pow(1.0 + spec.n_th, spec.m + 1) -
          std::pow(tc.q, spec.k) / factorial(spec.k) * factorial(spec.m + spec.k);
      if (!(val > 0.0))
        throw Error("zero_norm", "filtered-state normalization is not positive");
      return val;
    }
    case StateFamily::Pasts:
      return pasts_norm(spec.n_th, spec.m, spec.lambda, PastsNormForm::Reflected);
    case StateFamily::Pssts:
      return pssts_norm(spec.n_th, spec.m, spec.lambda);
  }
  throw Error("invalid_state", "unknown family");
}

double normalization_variant(const StateSpec& spec, PastsNormForm form) {
  spec.validate();
  if (spec.variant != StateFamily::Pasts)
    return normalization(spec);
  return pasts_norm(spec.n_th, spec.m, spec.lambda, form);
}

}  // namespace qpd
