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

#ifndef QPD_NUMKERNEL_HPP
#define QPD_NUMKERNEL_HPP

#include <complex>
#include <vector>

#include "qpd/errors.hpp"

namespace qpd {

using Complex = std::complex<double>;

/// n! as double. Exact table up to 170 (the double overflow bound);
/// larger arguments throw.
double factorial(int n);

/// n!/j! for n >= j >= 0, evaluated without forming either factorial.
/// Returns 0 when j < 0 or n < j (annihilated term).
double factorial_ratio(int n, int j);

double log_factorial(int n);

// ---------------------------------------------------------------------------
// Truncated Taylor series ("jets").
//
// A Jet1 of order d holds coefficients c[0..d] of f around a point x0, with
// c[j] = f^(j)(x0)/j!. The m-th derivative is m! * c[m]. All coefficients are
// complex so that one code path serves real and complex chains.
// ---------------------------------------------------------------------------

class Jet1 {
 public:
  explicit Jet1(int order);
  static Jet1 constant(Complex value, int order);
  /// The identity function t |-> t expanded around x0.
  static Jet1 variable(Complex x0, int order);

  int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
  Complex& operator[](int j) { return c_[static_cast<size_t>(j)]; }
  const Complex& operator[](int j) const { return c_[static_cast<size_t>(j)]; }

  /// m-th derivative at the expansion point: m! * c[m].
  Complex derivative(int m) const;

  Jet1& operator+=(const Jet1& o);
  Jet1& operator-=(const Jet1& o);
  Jet1& operator*=(Complex s);
  friend Jet1 operator+(Jet1 a, const Jet1& b) { return a += b; }
  friend Jet1 operator-(Jet1 a, const Jet1& b) { return a -= b; }
  friend Jet1 operator*(Complex s, Jet1 a) { return a *= s; }

 private:
  std::vector<Complex> c_;
};

/// Cauchy product, truncated to the common order.
Jet1 jet_product(const Jet1& a, const Jet1& b);

/// Reciprocal series; requires a nonzero constant term.
Jet1 jet_inv(const Jet1& a);

/// Series of a^(-1/2), principal branch. The constant term must be nonzero;
/// in-scope callers keep it in the right half-plane.
Jet1 jet_inv_sqrt(const Jet1& a);

Jet1 jet_exp(const Jet1& a);

/// Series of outer(inner(t)). The outer jet must be expanded around the
/// constant term of `inner`; orders must match.
Jet1 jet_compose(const Jet1& outer, const Jet1& inner);

// Bivariate jets: coefficients c[i][j] of f around (x0, u0) with
// c[i][j] = d_x^i d_u^j f / (i! j!). Used for the mixed-derivative kernels.
class Jet2 {
 public:
  Jet2(int order1, int order2);
  static Jet2 constant(Complex value, int order1, int order2);
  static Jet2 variable_first(Complex x0, int order1, int order2);
  static Jet2 variable_second(Complex u0, int order1, int order2);

  int order1() const noexcept { return d1_; }
  int order2() const noexcept { return d2_; }
  Complex& at(int i, int j) { return c_[static_cast<size_t>(i * (d2_ + 1) + j)]; }
  const Complex& at(int i, int j) const {
    return c_[static_cast<size_t>(i * (d2_ + 1) + j)];
  }

  /// Mixed derivative d_x^i d_u^j at the expansion point: i! j! c[i][j].
  Complex derivative(int i, int j) const;

  Jet2& operator+=(const Jet2& o);
  Jet2& operator-=(const Jet2& o);
  Jet2& operator*=(Complex s);
  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(Complex s, Jet2 a) { return a *= s; }

 private:
  int d1_, d2_;
  std::vector<Complex> c_;
};

Jet2 jet_product(const Jet2& a, const Jet2& b);
Jet2 jet_inv(const Jet2& a);
Jet2 jet_inv_sqrt(const Jet2& a);

/// Coefficients h_0..h_{n_max} of (a0 + a1 u + a2 u^2)^(-1/2) as a series in
/// u, each an x-jet of the inputs' order. The three-term recurrence follows
/// the dominant solution, so it stays accurate at orders in the hundreds
/// where a general truncated-product route loses precision.
std::vector<Jet1> inv_sqrt_quadratic_series(const Jet1& a0, const Jet1& a1,
                                            const Jet1& a2, int n_max);

// ---------------------------------------------------------------------------
// Gaussian integrals over the complex plane (measure d^2z / pi).
// ---------------------------------------------------------------------------

/// Integral of z^n conj(z)^m exp(A|z|^2 + B z + C conj(z)) d^2z/pi.
/// Requires Re(A) < 0; otherwise throws "divergent_integral".
Complex gaussian_moment_integral(int n, int m, Complex A, Complex B, Complex C);

/// Integral of exp(zeta|z|^2 + xi z + eta conj(z) + f z^2 + g conj(z)^2)
/// d^2z/pi, equal to (zeta^2-4fg)^(-1/2) exp((-zeta xi eta + xi^2 g
/// + eta^2 f)/(zeta^2-4fg)) with the principal square root.
/// Requires Re(zeta-f-g) < 0 and Re(zeta+f+g) < 0, and rejects arguments
/// that put zeta^2-4fg on the branch cut.
Complex gaussian_quadratic_integral(Complex zeta, Complex xi, Complex eta,
                                    Complex f, Complex g);

}  // namespace qpd

#endif  // QPD_NUMKERNEL_HPP
