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

#include <cmath>
#include <functional>

#include <doctest.h>

#include "qpd/fockoracle.hpp"

using namespace qpd;

namespace {

// central finite differences of order k with step h
double fd_stencil(const std::function<double(double)>& f, double x0, int k,
                  double h) {
  switch (k) {
    case 0: return f(x0);
    case 1: return (f(x0 + h) - f(x0 - h)) / (2 * h);
    case 2: return (f(x0 + h) - 2 * f(x0) + f(x0 - h)) / (h * h);
    case 3:
      return (f(x0 + 2 * h) - 2 * f(x0 + h) + 2 * f(x0 - h) - f(x0 - 2 * h)) /
             (2 * h * h * h);
    case 4:
      return (f(x0 + 2 * h) - 4 * f(x0 + h) + 6 * f(x0) - 4 * f(x0 - h) +
              f(x0 - 2 * h)) /
             (h * h * h * h);
    default: FAIL("unsupported order"); return 0.0;
  }
}

// Richardson-extrapolated differences. The base steps sit near the
// double-precision optimum per order; the nominal 1e-4 step drowns in
// rounding noise for k >= 3.
double finite_diff(const std::function<double(double)>& f, double x0, int k) {
  const double h = (k <= 2) ? 1e-4 : (k == 3 ? 4e-3 : 1.2e-2);
  const double coarse = fd_stencil(f, x0, k, h);
  const double fine = fd_stencil(f, x0, k, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

// deterministic parameter generator for the property checks
struct Lcg {
  unsigned long long s = 0x2545F4914F6CDD1DULL;
  double next(double lo, double hi) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    const double u = double((s >> 11) & ((1ULL << 53) - 1)) / double(1ULL << 53);
    return lo + (hi - lo) * u;
  }
};

// direct 2D Gauss-Hermite quadrature oracle for the Gaussian integrals,
// d^2 z / pi measure, integrand scaled by the leading Gaussian decay
Complex quad2d(const std::function<Complex(Complex)>& f, double decay,
               int order = 48) {
  const auto gh = fock::gauss_hermite(order);
  const double scale = 1.0 / std::sqrt(decay);
  Complex acc{0, 0};
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      const Complex z{scale * gh.nodes[i], scale * gh.nodes[j]};
      // the Gauss-Hermite weights carry exp(-decay |z|^2); f is the rest
      acc += gh.weights[i] * gh.weights[j] * f(z);
    }
  const double pi = 3.14159265358979323846;
  return acc * (scale * scale / pi);
}

}  // namespace

TEST_CASE("factorials") {
  CHECK(factorial(0) == 1.0);
  CHECK(factorial(5) == 120.0);
  CHECK(factorial_ratio(5, 3) == doctest::Approx(20.0));
  CHECK(factorial_ratio(2, 5) == 0.0);
  CHECK(factorial_ratio(400, 398) == doctest::Approx(400.0 * 399.0));
  CHECK_THROWS_AS((void)factorial(171), Error);
}

TEST_CASE("jet product basics") {
  // (1+u)(1-u) = 1 - u^2
  Jet1 a = Jet1::constant(1.0, 2);
  a[1] = 1.0;
  Jet1 b = Jet1::constant(1.0, 2);
  b[1] = -1.0;
  const Jet1 p = jet_product(a, b);
  CHECK(p[0] == Complex{1, 0});
  CHECK(p[1] == Complex{0, 0});
  CHECK(p[2] == Complex{-1, 0});

  const Jet1 one = Jet1::constant(1.0, 2);
  const Jet1 id = jet_product(a, one);
  for (int i = 0; i <= 2; ++i) CHECK(id[i] == a[i]);

  Jet1 mism(3);
  CHECK_THROWS_AS((void)jet_product(a, mism), Error);
}

TEST_CASE("jet of (1-u)^{-1} times (1-u) is unity") {
  const int d = 4;
  Jet1 u = Jet1::variable(0.0, d);
  const Jet1 omu = Jet1::constant(1.0, d) - u;
  const Jet1 prod = jet_product(jet_inv(omu), omu);
  CHECK(std::abs(prod[0] - Complex{1, 0}) < 1e-15);
  for (int i = 1; i <= d; ++i) CHECK(std::abs(prod[i]) < 1e-15);
  // the same statement through finite differences of the product function
  auto f = [](double x) { return (1.0 / (1.0 - x)) * (1.0 - x); };
  for (int k = 1; k <= 2; ++k)
    CHECK(std::abs(finite_diff(f, 0.0, k)) < 1e-4);
}

TEST_CASE("jet_inv_sqrt") {
  Jet1 c = Jet1::constant(4.0, 2);
  const Jet1 r = jet_inv_sqrt(c);
  CHECK(r[0] == Complex{0.5, 0});
  CHECK(r[1] == Complex{0, 0});

  // (1-2u)^{-1/2} = 1 + u + 1.5 u^2 + 2.5 u^3 + ...
  Jet1 a = Jet1::constant(1.0, 3);
  a[1] = -2.0;
  const Jet1 s = jet_inv_sqrt(a);
  CHECK(s[0].real() == doctest::Approx(1.0));
  CHECK(s[1].real() == doctest::Approx(1.0));
  CHECK(s[2].real() == doctest::Approx(1.5));
  CHECK(s[3].real() == doctest::Approx(2.5));

  // round trip: square of the result times the input is the unit jet
  const Jet1 sq = jet_product(jet_product(s, s), a);
  CHECK(std::abs(sq[0] - Complex{1, 0}) < 1e-12);
  for (int i = 1; i <= 3; ++i) CHECK(std::abs(sq[i]) < 1e-12);

  CHECK_THROWS_AS((void)jet_inv_sqrt(Jet1(2)), Error);
}

TEST_CASE("jet_exp") {
  const Jet1 z = Jet1::constant(0.0, 2);
  const Jet1 e0 = jet_exp(z);
  CHECK(e0[0] == Complex{1, 0});
  CHECK(e0[1] == Complex{0, 0});

  const Jet1 u = Jet1::variable(0.0, 3);
  const Jet1 eu = jet_exp(u);
  CHECK(eu[0].real() == doctest::Approx(1.0));
  CHECK(eu[1].real() == doctest::Approx(1.0));
  CHECK(eu[2].real() == doctest::Approx(0.5));
  CHECK(eu[3].real() == doctest::Approx(1.0 / 6.0));

  // random jet against finite differences of exp(f(u))
  Lcg rng;
  for (int trial = 0; trial < 20; ++trial) {
    const double c0 = rng.next(-1, 1), c1 = rng.next(-1, 1),
                 c2 = rng.next(-1, 1);
    Jet1 f = Jet1::constant(c0, 4);
    f[1] = c1;
    f[2] = c2;
    const Jet1 g = jet_exp(f);
    auto fn = [&](double x) { return std::exp(c0 + c1 * x + c2 * x * x); };
    for (int k = 0; k <= 4; ++k) {
      const double fd = finite_diff(fn, 0.0, k);
      const double jd = g.derivative(k).real();
      CHECK(jd == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("jet_compose") {
  const int d = 3;
  Jet1 inner = Jet1::constant(0.7, d);
  inner[1] = 0.3;
  inner[2] = -0.2;
  const Jet1 outer_id = Jet1::variable(inner[0], d);
  const Jet1 comp = jet_compose(outer_id, inner);
  for (int i = 0; i <= d; ++i) CHECK(std::abs(comp[i] - inner[i]) < 1e-15);

  // outer(x) = x^2 around 1, inner = 1 + u: (1+u)^2 = 1 + 2u + u^2
  Jet1 outer = Jet1::constant(1.0, 2);
  outer[1] = 2.0;  // d/dx x^2 at 1 -> 2, coeff 2/1!
  outer[2] = 1.0;  // second derivative 2, coeff 2/2!
  const Jet1 inner2 = Jet1::variable(1.0, 2);
  const Jet1 sq = jet_compose(outer, inner2);
  CHECK(sq[0].real() == doctest::Approx(1.0));
  CHECK(sq[1].real() == doctest::Approx(2.0));
  CHECK(sq[2].real() == doctest::Approx(1.0));

  // (1-x)^{-1/2} composed with x = u + u^2 against finite differences
  const int d4 = 4;
  Jet1 in3 = Jet1::variable(0.0, d4);
  in3[2] = 1.0;  // u + u^2
  const Jet1 out3 =
      jet_inv_sqrt(Jet1::constant(1.0, d4) - Jet1::variable(0.0, d4));
  const Jet1 c3 = jet_compose(out3, in3);
  auto fn = [](double x) { return 1.0 / std::sqrt(1.0 - x - x * x); };
  for (int kk = 0; kk <= 4; ++kk)
    CHECK(c3.derivative(kk).real() ==
          doctest::Approx(finite_diff(fn, 0.0, kk)).epsilon(1e-5));
}

TEST_CASE("jet derivatives match finite differences (property)") {
  // well-conditioned test functions: the kernel argument keeps its
  // singularities well outside the unit disc
  Lcg rng;
  for (int trial = 0; trial < 25; ++trial) {
    const double a = rng.next(1.0, 2.5), b = rng.next(-0.3, 0.3),
                 c = rng.next(-0.3, 0.3);
    // f(u) = exp(b u) / sqrt(a + c u + u^2 b^2)
    const int d = 4;
    Jet1 u = Jet1::variable(0.0, d);
    Jet1 arg = Jet1::constant(a, d) + Complex(c) * u +
               Complex(b * b) * jet_product(u, u);
    const Jet1 f = jet_product(jet_exp(Complex(b) * u), jet_inv_sqrt(arg));
    auto fn = [&](double x) {
      return std::exp(b * x) / std::sqrt(a + c * x + b * b * x * x);
    };
    for (int k = 0; k <= 4; ++k) {
      const double fd = finite_diff(fn, 0.0, k);
      const double jd = f.derivative(k).real();
      const double scale = std::max(std::abs(fd), 1.0);
      CHECK(std::abs(jd - fd) / scale < 1e-5);
    }
  }
}

TEST_CASE("quadratic inverse-sqrt series") {
  // (1 - 2u + u^2)^{-1/2} = (1-u)^{-1}: coefficients all one
  const Jet1 one = Jet1::constant(1.0, 0);
  const auto h = inv_sqrt_quadratic_series(one, Complex(-2.0) * one, one, 12);
  for (const auto& c : h) CHECK(std::abs(c[0] - Complex{1, 0}) < 1e-12);

  // against the bivariate route at modest orders, with jet coefficients
  const int d = 2;
  const Jet1 a0 = Jet1::constant(1.0, d);
  Jet1 a1 = Jet1::constant(-0.9, d);
  a1[1] = 0.2;
  Jet1 a2 = Jet1::constant(0.15, d);
  a2[1] = -0.1;
  const auto hs = inv_sqrt_quadratic_series(a0, a1, a2, 8);
  Jet2 arg = Jet2::constant(1.0, d, 8);
  const Jet2 u = Jet2::variable_second(0.0, d, 8);
  Jet2 lin(d, 8), quad(d, 8);
  for (int i = 0; i <= d; ++i) {
    lin.at(i, 0) = a1[i];
    quad.at(i, 0) = a2[i];
  }
  arg += jet_product(lin, u);
  arg += jet_product(quad, jet_product(u, u));
  const Jet2 ref = jet_inv_sqrt(arg);
  for (int j = 0; j <= 8; ++j)
    for (int i = 0; i <= d; ++i)
      CHECK(std::abs(hs[j][i] - ref.at(i, j)) < 1e-12);
}

TEST_CASE("bivariate jets") {
  // f(x,u) = (1 - x u)^{-1}: coefficient of x^i u^j is 1 when i == j
  const int d = 3;
  const Jet2 x = Jet2::variable_first(0.0, d, d);
  const Jet2 u = Jet2::variable_second(0.0, d, d);
  const Jet2 f = jet_inv(Jet2::constant(1.0, d, d) - jet_product(x, u));
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j)
      CHECK(std::abs(f.at(i, j) - Complex{i == j ? 1.0 : 0.0, 0.0}) < 1e-13);

  // inv_sqrt round trip
  Jet2 g = Jet2::constant(2.0, 2, 2);
  g.at(1, 0) = 0.3;
  g.at(0, 1) = -0.4;
  g.at(1, 1) = 0.1;
  const Jet2 r = jet_inv_sqrt(g);
  const Jet2 back = jet_product(jet_product(r, r), g);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j)
      CHECK(std::abs(back.at(i, j) - Complex{(i == 0 && j == 0) ? 1.0 : 0.0,
                                             0.0}) < 1e-12);
}

TEST_CASE("gaussian_moment_integral") {
  // unit Gaussian
  CHECK(std::abs(gaussian_moment_integral(0, 0, {-1, 0}, {0, 0}, {0, 0}) -
                 Complex{1, 0}) < 1e-14);
  // first moment pair: integral r^2 e^{-r^2} over d^2z/pi = 1
  CHECK(std::abs(gaussian_moment_integral(1, 1, {-1, 0}, {0, 0}, {0, 0}) -
                 Complex{1, 0}) < 1e-14);
  // value fixed by the quadrature oracle: A=-2, B=1, C=-1 -> e^{-1/2}/2
  const Complex v =
      gaussian_moment_integral(0, 0, {-2, 0}, {1, 0}, {-1, 0});
  CHECK(std::abs(v - 0.5 * std::exp(-0.5)) < 1e-12);
  const Complex q = quad2d(
      [](Complex z) {
        return std::exp(z - std::conj(z));
      },
      2.0);
  CHECK(std::abs(v - q) < 1e-8);

  CHECK_THROWS_AS(
      (void)gaussian_moment_integral(0, 0, {0.1, 0}, {0, 0}, {0, 0}), Error);
}

TEST_CASE("gaussian_quadratic_integral") {
  CHECK(std::abs(gaussian_quadratic_integral({-1, 0}, {0, 0}, {0, 0}, {0, 0},
                                             {0, 0}) -
                 Complex{1, 0}) < 1e-14);
  // zeta=-1, xi=1, eta=-1 -> exp(-1)
  CHECK(std::abs(gaussian_quadratic_integral({-1, 0}, {1, 0}, {-1, 0}, {0, 0},
                                             {0, 0}) -
                 std::exp(Complex{-1, 0})) < 1e-14);
  // zeta=-2, f=g=1/2 -> 3^{-1/2}
  CHECK(std::abs(gaussian_quadratic_integral({-2, 0}, {0, 0}, {0, 0},
                                             {0.5, 0}, {0.5, 0}) -
                 1.0 / std::sqrt(3.0)) < 1e-14);
  CHECK_THROWS_AS((void)gaussian_quadratic_integral({-1, 0}, {0, 0}, {0, 0},
                                                    {0.6, 0}, {0.6, 0}),
                  Error);
}

TEST_CASE("gaussian integrals agree with 2D quadrature on random draws") {
  Lcg rng;
  for (int trial = 0; trial < 100; ++trial) {
    const double Ar = rng.next(-3.0, -0.5);
    const Complex B{rng.next(-0.8, 0.8), rng.next(-0.8, 0.8)};
    const Complex C{rng.next(-0.8, 0.8), rng.next(-0.8, 0.8)};
    const int n = trial % 3, m = (trial / 3) % 3;
    const Complex direct = gaussian_moment_integral(n, m, {Ar, 0}, B, C);
    const Complex q = quad2d(
        [&](Complex z) {
          return std::pow(z, n) * std::pow(std::conj(z), m) *
                 std::exp(B * z + C * std::conj(z));
        },
        -Ar);
    CHECK(std::abs(direct - q) <=
          1e-8 * std::max(1.0, std::abs(direct)));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const double zr = rng.next(-3.0, -0.8);
    const double f = rng.next(-0.3, 0.3) * std::abs(zr);
    const double g = rng.next(-0.3, 0.3) * std::abs(zr);
    const Complex xi{rng.next(-0.6, 0.6), rng.next(-0.6, 0.6)};
    const Complex eta{rng.next(-0.6, 0.6), rng.next(-0.6, 0.6)};
    const Complex direct = gaussian_quadratic_integral({zr, 0}, xi, eta,
                                                       {f, 0}, {g, 0});
    const Complex q = quad2d(
        [&](Complex z) {
          return std::exp(xi * z + eta * std::conj(z) + f * z * z +
                          g * std::conj(z) * std::conj(z));
        },
        -zr);
    CHECK(std::abs(direct - q) <=
          1e-8 * std::max(1.0, std::abs(direct)));
  }
}
