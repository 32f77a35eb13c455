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

#include "qpd/photstat.hpp"

#include <algorithm>
#include <cmath>

#include "qpd/numkernel.hpp"

namespace qpd {

namespace {

constexpr int kSeriesCap = 4000;
constexpr int kMaxMomentOrder = 6;

// ----------------------- thermal family, PND -------------------------------

// One added-type group: m photons on a thermal weight exp(-A n), noise s.
double added_group_pnd(int m, double A, double s, int n) {
  const double As1 = A * s + 1.0;
  const double Ap = A / As1;
  double tot = 0.0;
  for (int l = 0; l <= m; ++l) {
    if (n < m - l) continue;
    const double w = factorial(m) * factorial(m) * std::pow(s, l) /
                     (factorial(l) * factorial(m - l) * factorial(m - l) *
                      std::pow(As1, 2 * m - l + 1));
    tot += w * factorial_ratio(n, n - m + l) * std::pow(1.0 - Ap, n - m + l);
  }
  return tot;
}

double pats_pnd(const StateSpec& spec, double s, int n, double N) {
  return added_group_pnd(spec.m, thermal_coeffs(spec.n_th).A, s, n) / N;
}

double pakfts_pnd(const StateSpec& spec, double s, int n, double N) {
  const ThermalCoeffs tc = thermal_coeffs(spec.n_th);
  const double hole_w = std::pow(tc.q, spec.k) / factorial(spec.k);
  if (s == 0.0) {
    const double t1 = (n >= spec.m)
                          ? factorial_ratio(n, n - spec.m) *
                                std::pow(tc.q, n - spec.m)
                          : 0.0;
    const double t2 =
        (n == spec.m + spec.k) ? hole_w * factorial(spec.m + spec.k) : 0.0;
    return (t1 - t2) / N;
  }
  return (added_group_pnd(spec.m, tc.A, s, n) -
          hole_w * added_group_pnd(spec.m + spec.k, 1.0, s, n)) /
         N;
}

// Subtracted thermal output: the diagonal element is the n-th Taylor
// coefficient at the stated evaluation point of
//   (1/(s(1/s-u))) * m! / (1/n_th - u - u^2/(1/s-u))^{m+1}.
Jet1 psts_output_kernel(const StateSpec& spec, double s, int order,
                        double point) {
  const int d = order;
  const Jet1 u = Jet1::variable(point, d);
  const Jet1 inv_su = jet_inv(Jet1::constant(1.0 / s, d) - u);
  const Jet1 g = Jet1::constant(1.0 / spec.n_th, d) - u -
                 jet_product(jet_product(u, u), inv_su);
  const Jet1 ginv = jet_inv(g);
  Jet1 kern = ginv;
  for (int i = 0; i < spec.m; ++i) kern = jet_product(kern, ginv);
  kern = Complex(factorial(spec.m) / s) * jet_product(kern, inv_su);
  return kern;
}

double psts_pnd(const StateSpec& spec, double s, int n, double N,
                double point) {
  if (s == 0.0) {
    const double q = spec.n_th / (spec.n_th + 1.0);
    return factorial_ratio(spec.m + n, n) * std::pow(q, spec.m + n + 1) / N;
  }
  return (psts_output_kernel(spec, s, n, point)[n] / N).real();
}

// ------------------- squeezed family, PND and moments ----------------------

// Photon-added squeezed kernel K(X, u) with the channel folded in; the
// photon-number distribution reads mixed coefficients at u0 = 0 and the
// moments at u0 = 1. Reduces at s = 0 to the input kernel.
Jet2 pasts_kernel(const StateSpec& spec, double s, int d1, int d2, double u0) {
  const SqueezeCoeffs sc = squeeze_coeffs(spec.n_th, spec.lambda);
  const Jet2 one = Jet2::constant(1.0, d1, d2);
  const Jet2 X = Jet2::variable_first(sc.X, d1, d2);
  const Jet2 u = Jet2::variable_second(u0, d1, d2);
  const Jet2 X2C2 = jet_product(X, X) - Jet2::constant(sc.C * sc.C, d1, d2);
  const Jet2 T = one + Complex(s) * X;
  const Jet2 den =
      jet_product(T, T) - Jet2::constant(s * s * sc.C * sc.C, d1, d2);
  const Jet2 den_inv = jet_inv(den);
  const Jet2 W = jet_product(X + Complex(s) * X2C2, den_inv);
  const Jet2 V = Complex(sc.C) * den_inv;
  const Jet2 inner = one - u + jet_product(u, W);
  const Jet2 uV = jet_product(u, V);
  const Jet2 arg = jet_product(inner, inner) - jet_product(uV, uV);
  return jet_product(jet_inv_sqrt(den), jet_inv_sqrt(arg));
}

double pasts_sign_scale(const StateSpec& spec, double N) {
  const SqueezeCoeffs sc = squeeze_coeffs(spec.n_th, spec.lambda);
  const double sign = (spec.m % 2 == 0) ? 1.0 : -1.0;
  return sign / (N * std::sqrt(sc.A_s));
}

// Photon-number row through the stable quadratic-kernel series; the general
// bivariate route loses precision at photon numbers in the hundreds.
std::vector<double> pasts_pnd_row(const StateSpec& spec, double s, int n_max,
                                  double N) {
  const SqueezeCoeffs sc = squeeze_coeffs(spec.n_th, spec.lambda);
  const int d = spec.m;
  const Jet1 one = Jet1::constant(1.0, d);
  const Jet1 X = Jet1::variable(sc.X, d);
  const Jet1 X2C2 = jet_product(X, X) - Jet1::constant(sc.C * sc.C, d);
  const Jet1 T = one + Complex(s) * X;
  const Jet1 den = jet_product(T, T) - Jet1::constant(s * s * sc.C * sc.C, d);
  const Jet1 den_inv = jet_inv(den);
  const Jet1 W = jet_product(X + Complex(s) * X2C2, den_inv);
  const Jet1 V = Complex(sc.C) * den_inv;
  // kernel argument (1 - u + u W)^2 - (u V)^2 as a quadratic in u
  const Jet1 Wm1 = W - one;
  const Jet1 a1 = Complex(2.0) * Wm1;
  const Jet1 a2 = jet_product(Wm1, Wm1) - jet_product(V, V);
  const std::vector<Jet1> h = inv_sqrt_quadratic_series(one, a1, a2, n_max);
  const Jet1 front = jet_inv_sqrt(den);
  const double scale = pasts_sign_scale(spec, N) * factorial(spec.m);
  std::vector<double> out(static_cast<size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n)
    out[static_cast<size_t>(n)] =
        scale * jet_product(front, h[static_cast<size_t>(n)])[d].real();
  return out;
}

double pasts_pnd_point(const StateSpec& spec, double s, int n, double N,
                       double u0) {
  if (u0 == 0.0) return pasts_pnd_row(spec, s, n, N)[static_cast<size_t>(n)];
  // alternate evaluation point, kept for the validation report only
  const Jet2 K = pasts_kernel(spec, s, spec.m, n, u0);
  return pasts_sign_scale(spec, N) *
         (factorial(spec.m) * K.at(spec.m, n)).real();
}

double pasts_moment(const StateSpec& spec, double s, int r, double N) {
  const Jet2 K = pasts_kernel(spec, s, spec.m, r, 1.0);
  return pasts_sign_scale(spec, N) * K.derivative(spec.m, r).real();
}

// Photon-subtracted squeezed kernel: v-series of
//   p(v) * (d_u^m g)(u(v)),   g(u) = ((1-Bu)^2 - C^2 u^2)^(-1/2),
// with p(v) = 1/(s+1-sv) and u(v) = s(1-v)^2/(s+1-sv) + v. The distribution
// reads coefficients at v0 = 0, the moments at v0 = 1 (where u = 1, p = 1).
Jet1 pssts_kernel(const StateSpec& spec, double s, int order, double v0) {
  const SqueezeCoeffs sc = squeeze_coeffs(spec.n_th, spec.lambda);
  const int d = order;
  const Jet1 one = Jet1::constant(1.0, d);
  const Jet1 v = Jet1::variable(v0, d);
  const Jet1 pden = Jet1::constant(1.0 + s, d) - Complex(s) * v;
  const Jet1 p = jet_inv(pden);
  const Jet1 omv = one - v;
  const Jet1 u_of_v =
      Complex(s) * jet_product(jet_product(omv, omv), jet_inv(pden)) + v;
  const double u0 = u_of_v[0].real();
  // outer series h = m-th derivative of g, expanded around u0 to order d
  const int dd = d + spec.m;
  const Jet1 uu = Jet1::variable(u0, dd);
  const Jet1 omBu = Jet1::constant(1.0, dd) - Complex(sc.B) * uu;
  const Jet1 g = jet_inv_sqrt(jet_product(omBu, omBu) -
                              Complex(sc.C * sc.C) * jet_product(uu, uu));
  Jet1 h(d);
  for (int j = 0; j <= d; ++j)
    h[j] = g[j + spec.m] * factorial_ratio(j + spec.m, j);
  return jet_product(p, jet_compose(h, u_of_v));
}

double pssts_pnd(const StateSpec& spec, double s, int n, double N) {
  const SqueezeCoeffs sc = squeeze_coeffs(spec.n_th, spec.lambda);
  return (pssts_kernel(spec, s, n, 0.0)[n] / (N * std::sqrt(sc.A_s))).real();
}

double pssts_moment(const StateSpec& spec, double s, int r, double N) {
  const SqueezeCoeffs sc = squeeze_coeffs(spec.n_th, spec.lambda);
  return (pssts_kernel(spec, s, r, 1.0).derivative(r) /
          (N * std::sqrt(sc.A_s)))
      .real();
}

// --------------------- thermal family, moments -----------------------------

// sum_n (n+r)!^2 / (n! (n+r-M)!) x^{n+r-M}, truncated with a certified
// geometric tail; throws "series_divergence" when the ratio test fails
// before the cap.
double added_moment_series(int M, int r, double x) {
  if (x < 0.0 || x >= 1.0)
    throw Error("series_divergence", "geometric base outside [0,1)");
  if (x == 0.0) {
    // Fock-like kernel: the single surviving term has n + r = M
    return (M >= r) ? factorial(M) * factorial_ratio(M, M - r) : 0.0;
  }
  double sum = 0.0;
  double prev = -1.0;
  for (int n = 0; n < kSeriesCap; ++n) {
    const double term = factorial_ratio(n + r, n) *
                        factorial_ratio(n + r, n + r - M) *
                        std::pow(x, n + r - M);
    sum += term;
    if (n > 2 * M + 8 && prev > 0.0 && term > 0.0) {
      const double ratio = term / prev;
      if (ratio < 1.0) {
        const double tail = term * ratio / (1.0 - ratio);
        if (term < 1e-14 * sum && tail < 1e-12 * std::max(sum, 1.0)) return sum;
      }
    }
    prev = term;
  }
  throw Error("series_divergence", "moment series did not certify by the cap");
}

double added_group_moment(int m, double A, double s, int r) {
  const double As1 = A * s + 1.0;
  const double Ap = A / As1;
  double tot = 0.0;
  for (int l = 0; l <= m; ++l) {
    const double w = factorial(m) * factorial(m) * std::pow(s, l) /
                     (factorial(l) * factorial(m - l) * factorial(m - l) *
                      std::pow(As1, 2 * m - l + 1));
    tot += w * added_moment_series(m - l, r, 1.0 - Ap);
  }
  return tot;
}

double thermal_moment(const StateSpec& spec, double s, int r, double N) {
  const ThermalCoeffs tc = thermal_coeffs(spec.n_th);
  switch (spec.variant) {
    case StateFamily::Pats:
      return added_group_moment(spec.m, tc.A, s, r) / N;
    case StateFamily::Pakfts: {
      const double hole_w = std::pow(tc.q, spec.k) / factorial(spec.k);
      return (added_group_moment(spec.m, tc.A, s, r) -
              hole_w * added_group_moment(spec.m + spec.k, 1.0, s, r)) /
             N;
    }
    case StateFamily::Psts: {
      if (s == 0.0)
        return factorial(spec.m + r) * std::pow(spec.n_th, spec.m + r + 1) / N;
      return (psts_output_kernel(spec, s, r, 0.0).derivative(r) / N).real();
    }
    default:
      throw Error("invalid_state", "thermal_moment on squeezed family");
  }
}

// -------------------------- tail estimation --------------------------------

// Geometric majorization over two interleaved subsequences (squeezed-state
// distributions alternate between even and odd n).
double geometric_tail(const std::vector<double>& p) {
  const size_t n = p.size();
  if (n < 6) return 0.0;
  const double a = p[n - 1], b = p[n - 2], a2 = p[n - 3], b2 = p[n - 4];
  double r = 0.0;
  if (a2 > 0.0) r = std::max(r, a / a2);
  if (b2 > 0.0) r = std::max(r, b / b2);
  if (!(r < 1.0) || r <= 0.0) return -1.0;  // pre-asymptotic
  return (a + b) * r / (1.0 - r);
}

}  // namespace

double pnd(const StateSpec& spec, const Stage& stage, int n) {
  spec.validate();
  if (n < 0) throw Error("range", "photon number must be nonnegative");
  if (n + spec.m + spec.k > 3900)
    throw Error("range", "photon number beyond the factorial table range");
  const double s = stage.noise();
  const double N = normalization(spec);
  switch (spec.variant) {
    case StateFamily::Pats:
      return pats_pnd(spec, s, n, N);
    case StateFamily::Psts:
      return psts_pnd(spec, s, n, N, -1.0);
    case StateFamily::Pakfts:
      return pakfts_pnd(spec, s, n, N);
    case StateFamily::Pasts:
      return pasts_pnd_point(spec, s, n, N, 0.0);
    case StateFamily::Pssts:
      return pssts_pnd(spec, s, n, N);
  }
  throw Error("invalid_state", "unknown family");
}

double pnd_variant(const StateSpec& spec, const Stage& stage, int n,
                   PstsOutputPndPoint point) {
  if (point == PstsOutputPndPoint::MinusOne ||
      spec.variant != StateFamily::Psts || stage.noise() == 0.0)
    return pnd(spec, stage, n);
  spec.validate();
  return psts_pnd(spec, stage.noise(), n, normalization(spec), 0.0);
}

double pasts_pnd_variant(const StateSpec& spec, const Stage& stage, int n,
                         PastsPndPoint point) {
  if (point == PastsPndPoint::Zero || spec.variant != StateFamily::Pasts)
    return pnd(spec, stage, n);
  spec.validate();
  return pasts_pnd_point(spec, stage.noise(), n, normalization(spec), 1.0);
}

PndResult pnd_full(const StateSpec& spec, const Stage& stage, int n_max) {
  spec.validate();
  if (n_max < 0) throw Error("range", "n_max must be nonnegative");
  const double s = stage.noise();
  const double N = normalization(spec);
  PndResult res;
  res.probabilities.resize(static_cast<size_t>(n_max) + 1);

  auto value_at = [&](int n) -> double {
    switch (spec.variant) {
      case StateFamily::Pats: return pats_pnd(spec, s, n, N);
      case StateFamily::Psts: return psts_pnd(spec, s, n, N, -1.0);
      case StateFamily::Pakfts: return pakfts_pnd(spec, s, n, N);
      default: throw Error("invalid_state", "unexpected family");
    }
  };

  if (spec.variant == StateFamily::Pasts) {
    res.probabilities = pasts_pnd_row(spec, s, n_max, N);
  } else if (spec.variant == StateFamily::Pssts) {
    const SqueezeCoeffs sc = squeeze_coeffs(spec.n_th, spec.lambda);
    const Jet1 kern = pssts_kernel(spec, s, n_max, 0.0);
    const double scale = 1.0 / (N * std::sqrt(sc.A_s));
    for (int n = 0; n <= n_max; ++n)
      res.probabilities[static_cast<size_t>(n)] = scale * kern[n].real();
  } else {
    for (int n = 0; n <= n_max; ++n)
      res.probabilities[static_cast<size_t>(n)] = value_at(n);
  }

  // Residual beyond n_max: follow the distribution until its geometric tail
  // certifies, accumulating the skipped mass.
  std::vector<double> window(res.probabilities);
  double extra = 0.0;
  int n = n_max;
  double tail = geometric_tail(window);
  while ((tail < 0.0 || tail > 1e-12) && n < kSeriesCap) {
    const int chunk = std::max(16, n / 2);
    if (spec.variant == StateFamily::Pasts) {
      const auto row = pasts_pnd_row(spec, s, n + chunk, N);
      for (int i = n + 1; i <= n + chunk; ++i) {
        extra += row[static_cast<size_t>(i)];
        window.push_back(row[static_cast<size_t>(i)]);
      }
    } else if (spec.variant == StateFamily::Pssts) {
      const SqueezeCoeffs sc = squeeze_coeffs(spec.n_th, spec.lambda);
      const Jet1 kern = pssts_kernel(spec, s, n + chunk, 0.0);
      const double scale = 1.0 / (N * std::sqrt(sc.A_s));
      for (int i = n + 1; i <= n + chunk; ++i) {
        extra += scale * kern[i].real();
        window.push_back(scale * kern[i].real());
      }
    } else {
      for (int i = n + 1; i <= n + chunk; ++i) {
        const double v = value_at(i);
        extra += v;
        window.push_back(v);
      }
    }
    n += chunk;
    tail = geometric_tail(window);
  }
  res.tail_bound = extra + std::max(tail, 0.0);
  return res;
}

double moment(const StateSpec& spec, const Stage& stage, int r) {
  spec.validate();
  if (r < 0 || r > kMaxMomentOrder)
    throw Error("range", "moment order must be in [0, 6]");
  const double s = stage.noise();
  const double N = normalization(spec);
  switch (spec.variant) {
    case StateFamily::Pats:
    case StateFamily::Psts:
    case StateFamily::Pakfts:
      return thermal_moment(spec, s, r, N);
    case StateFamily::Pasts:
      return pasts_moment(spec, s, r, N);
    case StateFamily::Pssts:
      return pssts_moment(spec, s, r, N);
  }
  throw Error("invalid_state", "unknown family");
}

double mandel_q(const StateSpec& spec, const Stage& stage) {
  const double m1 = moment(spec, stage, 1);
  if (!(m1 > 0.0))
    throw Error("undefined_statistic", "zero-mean state has no Mandel Q");
  const double m2 = moment(spec, stage, 2);
  return (m2 - m1 * m1) / m1;
}

double g2(const StateSpec& spec, const Stage& stage) {
  const double m1 = moment(spec, stage, 1);
  if (!(m1 > 0.0))
    throw Error("undefined_statistic", "zero-mean state has no g2");
  return moment(spec, stage, 2) / (m1 * m1);
}

StatSummary stat_summary(const StateSpec& spec, const Stage& stage) {
  const double m1 = moment(spec, stage, 1);
  if (!(m1 > 0.0))
    throw Error("undefined_statistic", "zero-mean state has no statistics");
  const double m2 = moment(spec, stage, 2);
  return {m1, m2, (m2 - m1 * m1) / m1, m2 / (m1 * m1)};
}

}  // namespace qpd
