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

#include "qpd/quasiprob.hpp"

#include <cmath>
#include <numbers>

namespace qpd {

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Thermal family (no squeezing). Every characteristic function here is a
// polynomial in -|gamma|^2 times a Gaussian, possibly in two groups (the
// filtered family subtracts a Fock-projector piece):
//
//   chi(gamma, kappa) = sum_g e^{-D_g |gamma|^2} sum_j c_{g,j} (-|gamma|^2)^j,
//   D_g = base_g - (kappa + offset_g)/2.
//
// The added family carries offset +1 (antinormal-ordered trace), the
// subtracted family offset -1 (normal-ordered trace).
// ---------------------------------------------------------------------------

struct RadialGroup {
  std::vector<double> coeffs;  // coeffs[j] multiplies (-|gamma|^2)^j
  double base;                 // pre-shift Gaussian decay
  double offset;               // +1 added family, -1 subtracted family
};

// Added-type kernel: m photons added onto a thermal weight exp(-A n) and
// passed through noise s. The l-sum redistributes the added photons over
// the channel; at s = 0 only l = 0 survives and the input form is recovered.
RadialGroup added_group(int m, double A, double s) {
  const double As1 = A * s + 1.0;
  const double Ap = A / As1;
  RadialGroup g;
  g.coeffs.assign(static_cast<size_t>(m) + 1, 0.0);
  for (int l = 0; l <= m; ++l) {
    const double w = factorial(m) * factorial(m) * std::pow(s, l) /
                     (factorial(l) * factorial(m - l) * factorial(m - l) *
                      std::pow(As1, 2 * m - l + 1));
    const int M = m - l;
    for (int b = 0; b <= M; ++b) {
      const int j = M - b;
      g.coeffs[static_cast<size_t>(j)] +=
          w * factorial(M) * factorial(M) /
          (factorial(b) * factorial(j) * factorial(j) *
           std::pow(Ap, 2 * M - b + 1));
    }
  }
  g.base = 1.0 / Ap;
  g.offset = +1.0;
  return g;
}

RadialGroup subtracted_group(int m, double n_th, double s) {
  RadialGroup g;
  g.coeffs.assign(static_cast<size_t>(m) + 1, 0.0);
  for (int l = 0; l <= m; ++l) {
    const int j = m - l;
    g.coeffs[static_cast<size_t>(j)] =
        factorial(m) * factorial(m) * std::pow(n_th, 2 * m - l + 1) /
        (factorial(l) * factorial(j) * factorial(j));
  }
  g.base = n_th + s;
  g.offset = -1.0;
  return g;
}

std::vector<RadialGroup> thermal_groups(const StateSpec& spec, double s) {
  const ThermalCoeffs tc = thermal_coeffs(spec.n_th);
  const double N = normalization(spec);
  std::vector<RadialGroup> groups;
  switch (spec.variant) {
    case StateFamily::Pats:
      groups.push_back(added_group(spec.m, tc.A, s));
      break;
    case StateFamily::Psts:
      groups.push_back(subtracted_group(spec.m, spec.n_th, s));
      break;
    case StateFamily::Pakfts: {
      groups.push_back(added_group(spec.m, tc.A, s));
      RadialGroup hole = added_group(spec.m + spec.k, 1.0, s);
      const double w = -std::pow(tc.q, spec.k) / factorial(spec.k);
      for (auto& c : hole.coeffs) c *= w;
      groups.push_back(std::move(hole));
      break;
    }
    default:
      throw Error("invalid_state", "thermal_groups called on squeezed family");
  }
  for (auto& g : groups)
    for (auto& c : g.coeffs) c /= N;
  return groups;
}

double group_decay(const RadialGroup& g, double kappa) {
  return g.base - 0.5 * (kappa + g.offset);
}

Complex thermal_char(const StateSpec& spec, double s, double kappa,
                     Complex gamma) {
  const double g2 = std::norm(gamma);
  double val = 0.0;
  for (const auto& g : thermal_groups(spec, s)) {
    double poly = 0.0, p = 1.0;
    for (size_t j = 0; j < g.coeffs.size(); ++j) {
      poly += g.coeffs[j] * p;
      p *= -g2;
    }
    val += poly * std::exp(-group_decay(g, kappa) * g2);
  }
  return {val, 0.0};
}

// Fourier transform of one polynomial-times-Gaussian group under the
// d^2 gamma / pi measure.
double thermal_qp(const StateSpec& spec, double s, double kappa,
                  Complex alpha, double decay_override_offset) {
  const double a2 = std::norm(alpha);
  double val = 0.0;
  for (const auto& g : thermal_groups(spec, s)) {
    const double D = g.base - 0.5 * (kappa + g.offset + decay_override_offset);
    if (!(D > 0.0))
      throw Error("singular_p",
                  "distribution is more singular than a delta function");
    double acc = 0.0;
    for (size_t j = 0; j < g.coeffs.size(); ++j) {
      if (g.coeffs[j] == 0.0) continue;
      const int jj = static_cast<int>(j);
      double inner = 0.0;
      for (int h = 0; h <= jj; ++h) {
        inner += factorial(jj) * factorial(jj) *
                 std::pow(-a2, jj - h) /
                 (factorial(h) * factorial(jj - h) * factorial(jj - h) *
                  std::pow(D, 2 * jj - h + 1));
      }
      acc += g.coeffs[j] * ((jj % 2 == 0) ? 1.0 : -1.0) * inner;
    }
    val += acc * std::exp(-a2 / D);
  }
  return val / kPi;
}

// ---------------------------------------------------------------------------
// Squeezed family. Characteristic functions take the form
//
//   prefactor(t) * exp(-E(t)|gamma|^2 + F(t) Re(gamma^2))
//
// under an m-th derivative in the chain variable t. All chain elements are
// jets; E and F carry the kappa shift. The same chain covers input and
// output: the channel enters through s and reduces smoothly at s = 0.
// ---------------------------------------------------------------------------

struct SqueezedChain {
  Jet1 kernel;   // prefactor series
  Jet1 E;        // |gamma|^2 coefficient (with kappa shift applied)
  Jet1 F;        // Re(gamma^2) coefficient
  double scale;  // 1/(N sqrt(A_s)), including the derivative sign
};

// Photon-added squeezed state, expanded in t = X around X0 = 1 - B.
// W(t) = (t + s(t^2-C^2))/den and V(t) = C/den with den = (1+st)^2 - s^2C^2
// reduce to t and C at s = 0. The m-th derivative carries (-1)^m.
SqueezedChain pasts_chain(const StateSpec& spec, double s, double kappa,
                          int order) {
  const SqueezeCoeffs sc = squeeze_coeffs(spec.n_th, spec.lambda);
  const int d = order;
  const Jet1 one = Jet1::constant(1.0, d);
  const Jet1 X = Jet1::variable(sc.X, d);
  const Jet1 X2C2 = jet_product(X, X) - Jet1::constant(sc.C * sc.C, d);
  const Jet1 T = one + Complex(s) * X;
  const Jet1 den = jet_product(T, T) - Jet1::constant(s * s * sc.C * sc.C, d);
  const Jet1 den_inv = jet_inv(den);
  const Jet1 W = jet_product(X + Complex(s) * X2C2, den_inv);
  const Jet1 V = Complex(sc.C) * den_inv;
  const Jet1 W2V2 = jet_product(W, W) - jet_product(V, V);
  const Jet1 W2V2_inv = jet_inv(W2V2);
  SqueezedChain ch{
      jet_product(jet_inv_sqrt(den), jet_inv_sqrt(W2V2)),
      jet_product(W, W2V2_inv) - Jet1::constant(0.5 * (kappa + 1.0), d),
      jet_product(V, W2V2_inv),
      0.0};
  const double N = normalization(spec);
  ch.scale = ((spec.m % 2 == 0) ? 1.0 : -1.0) / (N * std::sqrt(sc.A_s));
  return ch;
}

// Photon-subtracted squeezed state, expanded in u around 1. The channel only
// shifts the |gamma|^2 coefficient by s.
SqueezedChain pssts_chain(const StateSpec& spec, double s, double kappa,
                          int order) {
  const SqueezeCoeffs sc = squeeze_coeffs(spec.n_th, spec.lambda);
  const int d = order;
  const Jet1 u = Jet1::variable(1.0, d);
  const Jet1 omBu = Jet1::constant(1.0, d) - Complex(sc.B) * u;
  const Jet1 den = jet_product(omBu, omBu) -
                   Complex(sc.C * sc.C) * jet_product(u, u);
  const Jet1 den_inv = jet_inv(den);
  SqueezedChain ch{
      jet_inv_sqrt(den),
      jet_product(Complex(sc.B) * omBu + Complex(sc.C * sc.C) * u, den_inv) +
          Jet1::constant(s - 0.5 * (kappa - 1.0), d),
      Complex(sc.C) * den_inv,
      0.0};
  const double N = normalization(spec);
  ch.scale = 1.0 / (N * std::sqrt(sc.A_s));
  return ch;
}

SqueezedChain squeezed_chain(const StateSpec& spec, double s, double kappa) {
  return spec.variant == StateFamily::Pasts
             ? pasts_chain(spec, s, kappa, spec.m)
             : pssts_chain(spec, s, kappa, spec.m);
}

Complex squeezed_char(const StateSpec& spec, double s, double kappa,
                      Complex gamma) {
  const SqueezedChain ch = squeezed_chain(spec, s, kappa);
  const double g2 = std::norm(gamma);
  const double re_g2 = (gamma * gamma).real();
  const Jet1 expo = Complex(-g2) * ch.E + Complex(re_g2) * ch.F;
  const Jet1 val = jet_product(ch.kernel, jet_exp(expo));
  return ch.scale * val.derivative(spec.m);
}

double squeezed_qp_from_chain(const SqueezedChain& ch, int m, Complex alpha) {
  const double e0 = ch.E[0].real();
  const double f0 = ch.F[0].real();
  if (!(e0 - std::abs(f0) > 0.0))
    throw Error("singular_p",
                "distribution is more singular than a delta function");
  const Jet1 E2F2 = jet_product(ch.E, ch.E) - jet_product(ch.F, ch.F);
  const Jet1 inv = jet_inv(E2F2);
  const double a2 = std::norm(alpha);
  const double re_a2 = (alpha * alpha).real();
  const Jet1 expo =
      jet_product(Complex(-a2) * ch.E + Complex(re_a2) * ch.F, inv);
  Jet1 val = jet_product(ch.kernel, jet_inv_sqrt(E2F2));
  val = jet_product(val, jet_exp(expo));
  return (ch.scale * val.derivative(m)).real() / kPi;
}

double qp_dispatch(const StateSpec& spec, const Stage& stage, KappaOrder kappa,
                   Complex alpha, double subtracted_extra_offset) {
  spec.validate();
  const double s = stage.noise();
  const double kv = kappa_value(kappa);
  if (spec.is_squeezed()) {
    SqueezedChain ch = squeezed_chain(spec, s, kv);
    if (spec.variant == StateFamily::Pssts && subtracted_extra_offset != 0.0)
      ch.E -= Jet1::constant(0.5 * subtracted_extra_offset, spec.m);
    return squeezed_qp_from_chain(ch, spec.m, alpha);
  }
  return thermal_qp(spec, s, kv, alpha, subtracted_extra_offset);
}

}  // namespace

KappaOrder kappa_from_int(int k) {
  if (k == -1) return KappaOrder::Q;
  if (k == 0) return KappaOrder::W;
  if (k == 1) return KappaOrder::P;
  throw Error("invalid_state", "kappa must be one of -1, 0, +1");
}

void PhaseGrid::validate() const {
  if (!(re_max > re_min) || !(im_max > im_min))
    throw Error("invalid_state", "phase grid bounds must satisfy max > min");
  if (n_re < 2 || n_im < 2)
    throw Error("invalid_state", "phase grid needs at least 2 nodes per axis");
}

Admissibility convergence_guard(const StateSpec& spec, const Stage& stage,
                                KappaOrder kappa) {
  try {
    spec.validate();
  } catch (const Error& e) {
    return {false, e.reason()};
  }
  const double s = stage.noise();
  const double kv = kappa_value(kappa);
  if (!spec.is_squeezed()) {
    for (const auto& g : thermal_groups(spec, s)) {
      if (!(group_decay(g, kv) > 0.0))
        return {false, "nonpositive Gaussian decay in the transform"};
    }
    return {true, ""};
  }
  const SqueezedChain ch = squeezed_chain(spec, s, kv);
  const double e0 = ch.E[0].real(), f0 = ch.F[0].real();
  if (!(e0 - f0 > 0.0) || !(e0 + f0 > 0.0))
    return {false, "quadratic Gaussian transform condition violated"};
  return {true, ""};
}

Complex char_fn(const StateSpec& spec, const Stage& stage, KappaOrder kappa,
                Complex gamma) {
  spec.validate();
  const Admissibility adm = convergence_guard(spec, stage, kappa);
  if (!adm.admissible) throw Error("divergent_cf", adm.reason);
  const double s = stage.noise();
  const double kv = kappa_value(kappa);
  if (spec.is_squeezed()) return squeezed_char(spec, s, kv, gamma);
  return thermal_char(spec, s, kv, gamma);
}

double quasiprob_point(const StateSpec& spec, const Stage& stage,
                       KappaOrder kappa, Complex alpha) {
  return qp_dispatch(spec, stage, kappa, alpha, 0.0);
}

PhaseField quasiprob_grid(const StateSpec& spec, const Stage& stage,
                          KappaOrder kappa, const PhaseGrid& grid) {
  grid.validate();
  PhaseField field{grid, {}};
  field.values.reserve(static_cast<size_t>(grid.n_re) * grid.n_im);
  for (int i = 0; i < grid.n_re; ++i)
    for (int j = 0; j < grid.n_im; ++j) {
      try {
        field.values.push_back(quasiprob_point(
            spec, stage, kappa, Complex{grid.re_at(i), grid.im_at(j)}));
      } catch (const Error& e) {
        throw Error(e.reason(),
                    std::string(e.what()) + " at grid node (" +
                        std::to_string(grid.re_at(i)) + ", " +
                        std::to_string(grid.im_at(j)) + ")");
      }
    }
  return field;
}

double quasiprob_point_variant(const StateSpec& spec, const Stage& stage,
                               KappaOrder kappa, Complex alpha,
                               SubtractedOutputShift shift) {
  if (shift == SubtractedOutputShift::HalfKappaMinusOne ||
      !spec.is_subtracted() || stage.kind != StageKind::Output)
    return quasiprob_point(spec, stage, kappa, alpha);
  // (kappa+1)/2 instead of (kappa-1)/2: decay shrinks by one.
  return qp_dispatch(spec, stage, kappa, alpha, 2.0);
}

}  // namespace qpd
