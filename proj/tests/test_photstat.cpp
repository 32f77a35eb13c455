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

#include <cmath>

#include <doctest.h>

#include "qpd/fockoracle.hpp"
#include "qpd/numkernel.hpp"

using namespace qpd;

TEST_CASE("thermal distribution is geometric") {
  const StateSpec th{StateFamily::Pats, 1.0, 0, 0, 0.0};
  CHECK(pnd(th, Stage::input(), 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(pnd(th, Stage::input(), 3) ==
        doctest::Approx(0.5 * std::pow(0.5, 3)).epsilon(1e-14));
}

TEST_CASE("photon addition floors the distribution") {
  const StateSpec spec{StateFamily::Pats, 0.2, 1, 0, 0.0};
  CHECK(pnd(spec, Stage::input(), 0) == 0.0);
  const StateSpec spec2{StateFamily::Pats, 0.2, 2, 0, 0.0};
  CHECK(pnd(spec2, Stage::input(), 0) == 0.0);
  CHECK(pnd(spec2, Stage::input(), 1) == 0.0);
  // the peak sits exactly at the number of added photons
  for (int m : {0, 1, 2, 3}) {
    const StateSpec s{StateFamily::Pats, 0.2, m, 0, 0.0};
    double best = -1.0;
    int argmax = -1;
    for (int n = 0; n <= 30; ++n) {
      const double p = pnd(s, Stage::input(), n);
      if (p > best) {
        best = p;
        argmax = n;
      }
    }
    CHECK(argmax == m);
  }
}

TEST_CASE("filtration burns a hole at m + k") {
  for (double n_th : {0.2, 0.7}) {
    for (int m : {0, 1}) {
      for (int k : {1, 2}) {
        const StateSpec spec{StateFamily::Pakfts, n_th, m, k, 0.0};
        CHECK(std::abs(pnd(spec, Stage::input(), m + k)) < 1e-14);
        // neighbours stay populated
        CHECK(pnd(spec, Stage::input(), m + k + 1) > 0.0);
        // the channel fills the hole back up
        CHECK(pnd(spec, Stage::output(0.4), m + k) > 1e-4);
      }
    }
  }
}

TEST_CASE("distributions sum to one") {
  const StateSpec th{StateFamily::Pats, 0.5, 0, 0, 0.0};
  PndResult r = pnd_full(th, Stage::input(), 60);
  double sum = r.tail_bound;
  for (double p : r.probabilities) sum += p;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));

  const StateSpec pats{StateFamily::Pats, 0.2, 1, 0, 0.0};
  r = pnd_full(pats, Stage::input(), 60);
  sum = r.tail_bound;
  for (double p : r.probabilities) sum += p;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

  r = pnd_full(pats, Stage::output(0.4), 80);
  sum = r.tail_bound;
  for (double p : r.probabilities) sum += p;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

  // squeezed families, both stages
  for (const StateSpec spec :
       {StateSpec{StateFamily::Pasts, 0.2, 2, 0, 0.3},
        StateSpec{StateFamily::Pssts, 0.3, 1, 0, 0.4}}) {
    for (const Stage& st : {Stage::input(), Stage::output(0.6)}) {
      r = pnd_full(spec, st, 40);
      sum = r.tail_bound;
      for (double p : r.probabilities) sum += p;
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("frozen squeezed distribution value") {
  const StateSpec spec{StateFamily::Pssts, 0.2, 1, 0, 0.3};
  CHECK(pnd(spec, Stage::input(), 3) ==
        doctest::Approx(0.083564907887042).epsilon(1e-10));
}

TEST_CASE("deep distribution tails stay clean") {
  // the heavy corner state follows its geometric tail far past the bulk
  const StateSpec spec{StateFamily::Pasts, 1.0, 2, 0, 0.4};
  const Stage out = Stage::output(1.0);
  double prev = pnd(spec, out, 150);
  CHECK(prev > 0.0);
  for (int n : {200, 250, 300}) {
    const double p = pnd(spec, out, n);
    CHECK(p > 0.0);
    CHECK(p < prev);
    prev = p;
  }
  const PndResult r = pnd_full(spec, out, 80);
  double sum = r.tail_bound;
  for (double p : r.probabilities) sum += p;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("distribution matches the Fock diagonal") {
  for (const StateSpec spec :
       {StateSpec{StateFamily::Pats, 0.5, 2, 0, 0.0},
        StateSpec{StateFamily::Psts, 0.5, 1, 0, 0.0},
        StateSpec{StateFamily::Pakfts, 0.3, 1, 1, 0.0},
        StateSpec{StateFamily::Pasts, 0.2, 1, 0, 0.3},
        StateSpec{StateFamily::Pssts, 0.2, 2, 0, 0.2}}) {
    const auto rho_in = fock::build_state(spec, 80);
    for (const double s : {0.0, 0.4}) {
      const auto rho =
          (s == 0.0) ? rho_in : fock::apply_channel(rho_in, s, {24});
      const Stage stage = (s == 0.0) ? Stage::input() : Stage::output(s);
      for (int n = 0; n <= 12; ++n)
        CHECK(pnd(spec, stage, n) ==
              doctest::Approx(fock::oracle_pnd(rho, n)).epsilon(1e-8));
    }
  }
}

TEST_CASE("moment closed forms") {
  // subtracted thermal: (m+r)!/m! n_th^r
  const StateSpec psts{StateFamily::Psts, 0.5, 1, 0, 0.0};
  CHECK(moment(psts, Stage::input(), 1) == doctest::Approx(1.0).epsilon(1e-12));
  // thermal factorial moments r! n_th^r
  const StateSpec th{StateFamily::Pats, 1.0, 0, 0, 0.0};
  CHECK(moment(th, Stage::input(), 2) == doctest::Approx(2.0).epsilon(1e-10));
  // a pure Fock state
  const StateSpec fock1{StateFamily::Pats, 0.0, 1, 0, 0.0};
  CHECK(moment(fock1, Stage::input(), 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(moment(fock1, Stage::input(), 2) == doctest::Approx(0.0));
  // frozen output value for the squeezed-subtracted family
  const StateSpec pssts{StateFamily::Pssts, 0.2, 1, 0, 0.2};
  CHECK(moment(pssts, Stage::output(0.3), 2) ==
        doctest::Approx(2.322160998389674).epsilon(1e-10));
  // squeezed-added input value against the Fock oracle
  const StateSpec pasts{StateFamily::Pasts, 0.2, 1, 0, 0.2};
  const auto rho = fock::build_state(pasts, 120);
  CHECK(moment(pasts, Stage::input(), 2) ==
        doctest::Approx(fock::oracle_moment(rho, 2)).epsilon(1e-7));
}

TEST_CASE("channel adds s to the mean photon number") {
  for (const StateSpec spec :
       {StateSpec{StateFamily::Pats, 0.3, 1, 0, 0.0},
        StateSpec{StateFamily::Pssts, 0.2, 1, 0, 0.3}}) {
    const double mean_in = moment(spec, Stage::input(), 1);
    for (const double s : {0.2, 0.9})
      CHECK(moment(spec, Stage::output(s), 1) ==
            doctest::Approx(mean_in + s).epsilon(1e-10));
  }
}

TEST_CASE("Mandel Q and g2") {
  // thermal light: Q = n_th, g2 = 2
  for (double n_th : {0.2, 0.5, 1.0}) {
    const StateSpec th{StateFamily::Pats, n_th, 0, 0, 0.0};
    CHECK(mandel_q(th, Stage::input()) ==
          doctest::Approx(n_th).epsilon(1e-10));
    CHECK(g2(th, Stage::input()) == doctest::Approx(2.0).epsilon(1e-12));
  }
  // Fock state
  const StateSpec fock1{StateFamily::Pats, 0.0, 1, 0, 0.0};
  CHECK(mandel_q(fock1, Stage::input()) == doctest::Approx(-1.0));
  CHECK(g2(fock1, Stage::input()) == doctest::Approx(0.0));
  // photon subtraction leaves Mandel Q at n_th, independent of m
  for (int m : {0, 1, 2, 3}) {
    const StateSpec psts{StateFamily::Psts, 0.7, m, 0, 0.0};
    CHECK(mandel_q(psts, Stage::input()) ==
          doctest::Approx(0.7).epsilon(1e-10));
    CHECK(g2(psts, Stage::input()) ==
          doctest::Approx((m + 2.0) / (m + 1.0)).epsilon(1e-10));
  }
  // vacuum has no statistics
  CHECK_THROWS_AS((void)mandel_q({StateFamily::Pats, 0.0, 0, 0, 0.0},
                                 Stage::input()),
                  Error);
}

TEST_CASE("statistic identity mandel_q = mean (g2 - 1)") {
  for (const StateSpec spec :
       {StateSpec{StateFamily::Pats, 0.4, 1, 0, 0.0},
        StateSpec{StateFamily::Pakfts, 0.3, 1, 1, 0.0},
        StateSpec{StateFamily::Pasts, 0.2, 2, 0, 0.3},
        StateSpec{StateFamily::Pssts, 0.1, 1, 0, 0.2}}) {
    for (const Stage& st : {Stage::input(), Stage::output(0.5)}) {
      const StatSummary sum = stat_summary(spec, st);
      CHECK(sum.mandel_q ==
            doctest::Approx(sum.mean_n * (sum.g2 - 1.0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("odd-even structure of squeezed-subtracted Mandel Q") {
  for (double n_th : {0.01, 0.05}) {
    const StateSpec m2{StateFamily::Pssts, n_th, 2, 0, 0.2};
    CHECK(mandel_q(m2, Stage::input()) >= 0.0);
    const StateSpec m1{StateFamily::Pssts, n_th, 1, 0, 0.2};
    CHECK(mandel_q(m1, Stage::input()) < 0.0);
  }
  const StateSpec m3{StateFamily::Pssts, 0.01, 3, 0, 0.2};
  CHECK(mandel_q(m3, Stage::input()) < 0.0);
}

TEST_CASE("noise drives Mandel Q upward") {
  const StateSpec spec{StateFamily::Pats, 0.1, 1, 0, 0.0};
  double prev = -1e9;
  for (const double s : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
    const double q = mandel_q(spec, Stage::output(s));
    CHECK(q >= prev - 1e-12);
    prev = q;
  }
}

TEST_CASE("moments match the displaced-moment oracle") {
  for (const StateSpec spec :
       {StateSpec{StateFamily::Pats, 0.5, 2, 0, 0.0},
        StateSpec{StateFamily::Pssts, 0.5, 1, 0, 0.3}}) {
    const auto rho = fock::build_state(spec, 160);
    for (const double s : {0.0, 0.7})
      for (int r = 1; r <= 2; ++r)
        CHECK(moment(spec, Stage::output(s), r) ==
              doctest::Approx(fock::oracle_output_moment(rho, s, r))
                  .epsilon(1e-9));
  }
}
