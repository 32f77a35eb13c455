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

#include "qpd/numkernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace qpd {

namespace {

constexpr int kFactorialMax = 170;

const std::array<double, kFactorialMax + 1>& factorial_table() {
  static const auto table = [] {
    std::array<double, kFactorialMax + 1> t{};
    t[0] = 1.0;
    for (int n = 1; n <= kFactorialMax; ++n) t[n] = t[n - 1] * n;
    return t;
  }();
  return table;
}

void require_same_order(const Jet1& a, const Jet1& b) {
  if (a.order() != b.order())
    throw Error("order_mismatch", "jet orders differ");
}

void require_same_order(const Jet2& a, const Jet2& b) {
  if (a.order1() != b.order1() || a.order2() != b.order2())
    throw Error("order_mismatch", "jet orders differ");
}

}  // namespace

double factorial(int n) {
  if (n < 0 || n > kFactorialMax)
    throw Error("range", "factorial argument out of range: " + std::to_string(n));
  return factorial_table()[n];
}

double log_factorial(int n) {
  if (n < 0) throw Error("range", "log_factorial of negative argument");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double factorial_ratio(int n, int j) {
  if (j < 0 || n < j) return 0.0;
  if (n <= kFactorialMax) return factorial_table()[n] / factorial_table()[j];
  return std::exp(log_factorial(n) - log_factorial(j));
}

// ----------------------------- Jet1 ---------------------------------------

Jet1::Jet1(int order) {
  if (order < 0) throw Error("range", "negative jet order");
  c_.assign(static_cast<size_t>(order) + 1, Complex{0.0, 0.0});
}

Jet1 Jet1::constant(Complex value, int order) {
  Jet1 j(order);
  j.c_[0] = value;
  return j;
}

Jet1 Jet1::variable(Complex x0, int order) {
  Jet1 j(order);
  j.c_[0] = x0;
  if (order >= 1) j.c_[1] = 1.0;
  return j;
}

Complex Jet1::derivative(int m) const {
  if (m < 0 || m > order()) throw Error("range", "derivative order out of range");
  return factorial(m) * c_[static_cast<size_t>(m)];
}

Jet1& Jet1::operator+=(const Jet1& o) {
  require_same_order(*this, o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet1& Jet1::operator-=(const Jet1& o) {
  require_same_order(*this, o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet1& Jet1::operator*=(Complex s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Jet1 jet_product(const Jet1& a, const Jet1& b) {
  require_same_order(a, b);
  const int d = a.order();
  Jet1 out(d);
  for (int k = 0; k <= d; ++k) {
    Complex acc{0.0, 0.0};
    for (int i = 0; i <= k; ++i) acc += a[i] * b[k - i];
    out[k] = acc;
  }
  return out;
}

Jet1 jet_inv(const Jet1& a) {
  if (a[0] == Complex{0.0, 0.0})
    throw Error("singular_expansion", "jet_inv with zero constant term");
  const int d = a.order();
  Jet1 out(d);
  out[0] = 1.0 / a[0];
  for (int k = 1; k <= d; ++k) {
    Complex acc{0.0, 0.0};
    for (int i = 1; i <= k; ++i) acc += a[i] * out[k - i];
    out[k] = -acc / a[0];
  }
  return out;
}

Jet1 jet_inv_sqrt(const Jet1& a) {
  if (a[0] == Complex{0.0, 0.0})
    throw Error("singular_expansion", "jet_inv_sqrt with zero constant term");
  const int d = a.order();
  Jet1 out(d);
  out[0] = 1.0 / std::sqrt(a[0]);
  if (d == 0) return out;
  // b = a^{-1/2} satisfies b' = -(1/2)(a'/a) b; advance coefficient-wise.
  const Jet1 ainv = jet_inv(a);
  std::vector<Complex> g(static_cast<size_t>(d), Complex{0.0, 0.0});
  for (int k = 0; k < d; ++k) {
    Complex acc{0.0, 0.0};
    for (int i = 0; i <= k; ++i) acc += (static_cast<double>(i + 1) * a[i + 1]) * ainv[k - i];
    g[static_cast<size_t>(k)] = acc;
  }
  for (int k = 0; k < d; ++k) {
    Complex acc{0.0, 0.0};
    for (int i = 0; i <= k; ++i) acc += g[static_cast<size_t>(i)] * out[k - i];
    out[k + 1] = -0.5 * acc / static_cast<double>(k + 1);
  }
  return out;
}

Jet1 jet_exp(const Jet1& a) {
  const int d = a.order();
  Jet1 out(d);
  out[0] = std::exp(a[0]);
  for (int k = 0; k < d; ++k) {
    Complex acc{0.0, 0.0};
    for (int i = 0; i <= k; ++i) acc += (static_cast<double>(i + 1) * a[i + 1]) * out[k - i];
    out[k + 1] = acc / static_cast<double>(k + 1);
  }
  return out;
}

Jet1 jet_compose(const Jet1& outer, const Jet1& inner) {
  require_same_order(outer, inner);
  const int d = outer.order();
  Jet1 shifted = inner;
  shifted[0] = 0.0;  // caller aligned the expansion points
  Jet1 res = Jet1::constant(outer[d], d);
  for (int k = d - 1; k >= 0; --k) {
    res = jet_product(res, shifted);
    res[0] += outer[k];
  }
  return res;
}

// ----------------------------- Jet2 ---------------------------------------

Jet2::Jet2(int order1, int order2) : d1_(order1), d2_(order2) {
  if (order1 < 0 || order2 < 0) throw Error("range", "negative jet order");
  c_.assign(static_cast<size_t>(d1_ + 1) * static_cast<size_t>(d2_ + 1),
            Complex{0.0, 0.0});
}

Jet2 Jet2::constant(Complex value, int order1, int order2) {
  Jet2 j(order1, order2);
  j.at(0, 0) = value;
  return j;
}

Jet2 Jet2::variable_first(Complex x0, int order1, int order2) {
  Jet2 j(order1, order2);
  j.at(0, 0) = x0;
  if (order1 >= 1) j.at(1, 0) = 1.0;
  return j;
}

Jet2 Jet2::variable_second(Complex u0, int order1, int order2) {
  Jet2 j(order1, order2);
  j.at(0, 0) = u0;
  if (order2 >= 1) j.at(0, 1) = 1.0;
  return j;
}

Complex Jet2::derivative(int i, int j) const {
  if (i < 0 || i > d1_ || j < 0 || j > d2_)
    throw Error("range", "derivative order out of range");
  return factorial(i) * factorial(j) * at(i, j);
}

Jet2& Jet2::operator+=(const Jet2& o) {
  require_same_order(*this, o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
  require_same_order(*this, o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet2& Jet2::operator*=(Complex s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Jet2 jet_product(const Jet2& a, const Jet2& b) {
  require_same_order(a, b);
  const int d1 = a.order1(), d2 = a.order2();
  Jet2 out(d1, d2);
  for (int i = 0; i <= d1; ++i)
    for (int j = 0; j <= d2; ++j) {
      Complex acc{0.0, 0.0};
      for (int p = 0; p <= i; ++p)
        for (int q = 0; q <= j; ++q) acc += a.at(p, q) * b.at(i - p, j - q);
      out.at(i, j) = acc;
    }
  return out;
}

Jet2 jet_inv(const Jet2& a) {
  if (a.at(0, 0) == Complex{0.0, 0.0})
    throw Error("singular_expansion", "jet_inv with zero constant term");
  const int d1 = a.order1(), d2 = a.order2();
  Jet2 out(d1, d2);
  out.at(0, 0) = 1.0 / a.at(0, 0);
  for (int t = 1; t <= d1 + d2; ++t) {
    for (int i = std::max(0, t - d2); i <= std::min(t, d1); ++i) {
      const int j = t - i;
      Complex acc{0.0, 0.0};
      for (int p = 0; p <= i; ++p)
        for (int q = 0; q <= j; ++q) {
          if (p == 0 && q == 0) continue;
          acc += a.at(p, q) * out.at(i - p, j - q);
        }
      out.at(i, j) = -acc / a.at(0, 0);
    }
  }
  return out;
}

Jet2 jet_inv_sqrt(const Jet2& a) {
  if (a.at(0, 0) == Complex{0.0, 0.0})
    throw Error("singular_expansion", "jet_inv_sqrt with zero constant term");
  const int d1 = a.order1(), d2 = a.order2();
  // Newton iteration b <- b (3 - a b^2)/2 doubles the correct order each pass.
  Jet2 b = Jet2::constant(1.0 / std::sqrt(a.at(0, 0)), d1, d2);
  const Jet2 three = Jet2::constant(3.0, d1, d2);
  int correct = 1;
  while (correct <= d1 + d2) {
    Jet2 t = three;
    t -= jet_product(a, jet_product(b, b));
    b = Complex{0.5, 0.0} * jet_product(b, t);
    correct *= 2;
  }
  return b;
}

std::vector<Jet1> inv_sqrt_quadratic_series(const Jet1& a0, const Jet1& a1,
                                            const Jet1& a2, int n_max) {
  require_same_order(a0, a1);
  require_same_order(a0, a2);
  if (n_max < 0) throw Error("range", "negative series order");
  // From arg h' = -(1/2) arg' h with arg = a0 + a1 u + a2 u^2:
  //   (j+1) a0 h_{j+1} = -(j + 1/2) a1 h_j - j a2 h_{j-1}
  const Jet1 inv_a0 = jet_inv(a0);
  std::vector<Jet1> h;
  h.reserve(static_cast<size_t>(n_max) + 1);
  h.push_back(jet_inv_sqrt(a0));
  if (n_max == 0) return h;
  h.push_back(Complex{-0.5, 0.0} *
              jet_product(jet_product(a1, h[0]), inv_a0));
  for (int j = 1; j < n_max; ++j) {
    Jet1 rhs = Complex{-(j + 0.5), 0.0} * jet_product(a1, h[static_cast<size_t>(j)]);
    rhs -= Complex{static_cast<double>(j), 0.0} *
           jet_product(a2, h[static_cast<size_t>(j) - 1]);
    h.push_back(Complex{1.0 / (j + 1.0), 0.0} * jet_product(rhs, inv_a0));
  }
  return h;
}

// ------------------------ Gaussian integrals -------------------------------

namespace {
// integer powers; std::pow on complex NaNs out for a zero base
Complex ipow(Complex base, int k) {
  Complex out{1.0, 0.0};
  for (int i = 0; i < k; ++i) out *= base;
  return out;
}
}  // namespace

Complex gaussian_moment_integral(int n, int m, Complex A, Complex B, Complex C) {
  if (n < 0 || m < 0) throw Error("range", "negative moment power");
  if (A.real() >= 0.0)
    throw Error("divergent_integral", "gaussian_moment_integral needs Re(A) < 0");
  const Complex front = std::exp(-B * C / A);
  Complex sum{0.0, 0.0};
  const int lmax = std::min(n, m);
  for (int l = 0; l <= lmax; ++l) {
    Complex term = factorial(n) * factorial(m) /
                   (factorial(l) * factorial(n - l) * factorial(m - l));
    term /= ipow(-A, n + m - l + 1);
    term *= ipow(B, m - l) * ipow(C, n - l);
    sum += term;
  }
  return front * sum;
}

Complex gaussian_quadratic_integral(Complex zeta, Complex xi, Complex eta,
                                    Complex f, Complex g) {
  if ((zeta - f - g).real() >= 0.0 || (zeta + f + g).real() >= 0.0)
    throw Error("divergent_integral",
                "gaussian_quadratic_integral convergence condition violated");
  const Complex disc = zeta * zeta - 4.0 * f * g;
  if (disc.imag() == 0.0 && disc.real() <= 0.0)
    throw Error("branch_ambiguity", "zeta^2 - 4fg lies on the branch cut");
  return std::exp((-zeta * xi * eta + xi * xi * g + eta * eta * f) / disc) /
         std::sqrt(disc);
}

}  // namespace qpd
