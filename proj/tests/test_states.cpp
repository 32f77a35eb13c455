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

#include <doctest.h>

#include "qpd/fockoracle.hpp"
#include "qpd/numkernel.hpp"

using namespace qpd;

TEST_CASE("thermal coefficients") {
  const ThermalCoeffs vac = thermal_coeffs(0.0);
  CHECK(vac.A == doctest::Approx(1.0));
  CHECK(vac.q == doctest::Approx(0.0));
  const ThermalCoeffs one = thermal_coeffs(1.0);
  CHECK(one.A == doctest::Approx(0.5));
  CHECK(one.q == doctest::Approx(0.5));
  CHECK(thermal_coeffs(0.2).A == doctest::Approx(1.0 / 1.2));
  for (double n : {0.0, 0.1, 0.7, 3.0}) {
    const ThermalCoeffs tc = thermal_coeffs(n);
    CHECK(tc.A + tc.q == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(tc.A == doctest::Approx(1.0 / (1.0 + n)).epsilon(1e-14));
  }
  CHECK_THROWS_AS((void)thermal_coeffs(-0.1), Error);
}

TEST_CASE("squeeze coefficients") {
  const SqueezeCoeffs vac = squeeze_coeffs(0.0, 0.0);
  CHECK(vac.A_s == doctest::Approx(1.0));
  CHECK(vac.B == doctest::Approx(0.0));
  CHECK(vac.C == doctest::Approx(0.0));
  CHECK(vac.X == doctest::Approx(1.0));

  const SqueezeCoeffs th = squeeze_coeffs(1.0, 0.0);
  CHECK(th.A_s == doctest::Approx(4.0));
  CHECK(th.B == doctest::Approx(0.5));
  CHECK(th.C == doctest::Approx(0.0));
  CHECK(th.X == doctest::Approx(0.5));

  const SqueezeCoeffs sc = squeeze_coeffs(0.2, 0.2);
  const double ch = std::cosh(0.2);
  CHECK(sc.A_s == doctest::Approx(0.04 + 1.4 * ch * ch).epsilon(1e-14));
  // lambda = 0 reduces to the thermal coefficient
  const SqueezeCoeffs flat = squeeze_coeffs(0.3, 0.0);
  CHECK(flat.C == doctest::Approx(0.0));
  CHECK(flat.X == doctest::Approx(thermal_coeffs(0.3).A).epsilon(1e-14));
  // X^2 - C^2 stays positive over a parameter scan
  for (double n : {0.0, 0.3, 1.0, 2.0})
    for (double l : {0.0, 0.2, 0.5, 1.0, 2.0}) {
      const SqueezeCoeffs c = squeeze_coeffs(n, l);
      CHECK(c.X * c.X - c.C * c.C > 0.0);
    }
}

TEST_CASE("normalization closed forms") {
  CHECK(normalization({StateFamily::Pats, 0.2, 0, 0, 0.0}) ==
        doctest::Approx(1.2).epsilon(1e-14));
  CHECK(normalization({StateFamily::Psts, 0.5, 1, 0, 0.0}) ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(normalization({StateFamily::Pakfts, 1.0, 1, 1, 0.0}) ==
        doctest::Approx(3.0).epsilon(1e-14));
  // trace of the squeezed thermal state itself
  CHECK(normalization({StateFamily::Pasts, 0.5, 0, 0, 0.3}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(normalization({StateFamily::Pssts, 0.5, 0, 0, 0.3}) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("filtered normalization identity") {
  for (double n_th : {0.3, 0.8}) {
    for (int m : {0, 1, 2}) {
      for (int k : {0, 1, 2}) {
        const StateSpec spec{StateFamily::Pakfts, n_th, m, k, 0.0};
        const double q = n_th / (1.0 + n_th);
        const double expected =
            factorial(m) * std::pow(1.0 + n_th, m + 1) -
            std::pow(q, k) / factorial(k) * factorial(m + k);
        CHECK(normalization(spec) == doctest::Approx(expected).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("squeezing off reduces the added family to thermal") {
  // the unnormalized kernels differ by the fixed convention factor 1+n_th
  for (double n_th : {0.2, 0.7}) {
    for (int m : {0, 1, 2, 3}) {
      const double n_sq =
          normalization({StateFamily::Pasts, n_th, m, 0, 0.0});
      const double n_th_norm = normalization({StateFamily::Pats, n_th, m, 0, 0.0});
      CHECK(n_sq * (1.0 + n_th) ==
            doctest::Approx(n_th_norm).epsilon(1e-10));
    }
  }
}

TEST_CASE("normalization equals the Fock-space kernel trace") {
  // frozen values cross-checked against an independent implementation
  CHECK(normalization({StateFamily::Pasts, 0.5, 1, 0, 0.3}) ==
        doctest::Approx(1.685465218242267).epsilon(1e-10));
  CHECK(normalization({StateFamily::Pasts, 0.2, 2, 0, 0.2}) ==
        doctest::Approx(3.241516006107898).epsilon(1e-10));

  for (const StateSpec spec :
       {StateSpec{StateFamily::Pats, 0.5, 2, 0, 0.0},
        StateSpec{StateFamily::Psts, 0.8, 1, 0, 0.0},
        StateSpec{StateFamily::Pakfts, 0.5, 1, 2, 0.0},
        StateSpec{StateFamily::Pasts, 2.0, 3, 0, 0.5},
        StateSpec{StateFamily::Pssts, 1.0, 2, 0, 0.4}}) {
    // cutoff from the state's photon content, so the truncated trace
    // converges past the tolerance
    const double mean = fock::oracle_moment(fock::build_state(spec, 100), 1);
    const int cutoff = fock::recommended_cutoff(1.1 * mean + 1.0, 1e-11);
    const double tr = fock::build_unnormalized(spec, cutoff).trace_real();
    CHECK(normalization(spec) == doctest::Approx(tr).epsilon(1e-8));
  }
}

TEST_CASE("degenerate specs are rejected") {
  CHECK_THROWS_AS((void)normalization({StateFamily::Psts, 0.0, 1, 0, 0.0}),
                  Error);
  CHECK_THROWS_AS((void)normalization({StateFamily::Pssts, 0.0, 2, 0, 0.3}),
                  Error);
  CHECK_THROWS_AS((void)normalization({StateFamily::Pakfts, 0.0, 1, 1, 0.0}),
                  Error);
  CHECK_THROWS_AS((void)normalization({StateFamily::Pats, -0.5, 0, 0, 0.0}),
                  Error);
  const StateSpec stray_k{StateFamily::Pats, 0.5, 1, 1, 0.0};
  CHECK_THROWS_AS(stray_k.validate(), Error);
  const StateSpec fock_like{StateFamily::Pats, 0.0, 2, 0, 0.0};
  CHECK_NOTHROW(fock_like.validate());
}

TEST_CASE("stage semantics") {
  const Stage in = Stage::input();
  CHECK(in.noise() == 0.0);
  const Stage out = Stage::output(0.7);
  CHECK(out.noise() == doctest::Approx(0.7));
  CHECK(Stage::output(0.0).noise() == 0.0);
  CHECK_THROWS_AS((void)Stage::output(-0.2), Error);
}
