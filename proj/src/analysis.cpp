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

#include "qpd/analysis.hpp"

#include <cmath>
#include <limits>

#include "qpd/photstat.hpp"
#include "qpd/quasiprob.hpp"

namespace qpd {

namespace {

double w0(const StateSpec& spec, double s) {
  return quasiprob_point(spec, Stage::output(s), KappaOrder::W, Complex{0, 0});
}

constexpr int kMonotoneSamples = 32;
constexpr int kMaxBisection = 60;
constexpr double kSTolerance = 1e-10;

}  // namespace

ThresholdResult wigner_center_threshold(const StateSpec& spec, double s_max,
                                        double tol) {
  spec.validate();
  if (!(s_max > 0.0)) throw Error("invalid_state", "s_max must be positive");
  if (!(tol > 0.0)) throw Error("invalid_state", "tol must be positive");

  const double f0 = w0(spec, 0.0);
  if (f0 >= 0.0)
    throw Error("not_applicable",
                "state has no Wigner negativity at the origin");

  ThresholdResult res;
  // Scan for the first sign change; non-monotone samples only downgrade the
  // uniqueness claim, the smallest root is still reported.
  double prev_s = 0.0, prev_f = f0;
  double lo = 0.0, hi = -1.0;
  double last = f0;
  for (int i = 1; i <= kMonotoneSamples; ++i) {
    const double si = s_max * i / kMonotoneSamples;
    const double fi = w0(spec, si);
    if (fi < last - 1e-15 && hi < 0.0) res.multi_root_warning = true;
    last = fi;
    if (hi < 0.0 && prev_f < 0.0 && fi >= 0.0) {
      lo = prev_s;
      hi = si;
    }
    prev_s = si;
    prev_f = fi;
  }
  if (hi < 0.0) {
    res.found = false;  // still negative at s_max
    return res;
  }

  int it = 0;
  double f_mid = 0.0;
  double mid = 0.5 * (lo + hi);
  while (it < kMaxBisection) {
    mid = 0.5 * (lo + hi);
    f_mid = w0(spec, mid);
    ++it;
    if (std::abs(f_mid) < tol && hi - lo < kSTolerance) break;
    if (f_mid < 0.0) lo = mid;
    else hi = mid;
  }
  res.found = true;
  res.s_star = mid;
  res.s_lo = lo;
  res.s_hi = hi;
  res.iterations = it;
  res.w0_at_star = f_mid;
  return res;
}

std::string axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::NTh: return "n_th";
    case SweepAxis::Lambda: return "lambda";
    case SweepAxis::S: return "s";
    case SweepAxis::M: return "m";
  }
  throw Error("invalid_state", "unknown axis");
}

std::string quantity_name(SweepQuantity q) {
  switch (q) {
    case SweepQuantity::W0: return "W0";
    case SweepQuantity::Q0: return "Q0";
    case SweepQuantity::MandelQ: return "mandel_q";
    case SweepQuantity::G2: return "g2";
    case SweepQuantity::PndPeak: return "pnd_peak";
  }
  throw Error("invalid_state", "unknown quantity");
}

SweepAxis axis_from_name(const std::string& s) {
  if (s == "n_th" || s == "nth") return SweepAxis::NTh;
  if (s == "lambda") return SweepAxis::Lambda;
  if (s == "s") return SweepAxis::S;
  if (s == "m") return SweepAxis::M;
  throw Error("invalid_state", "unknown sweep axis: " + s);
}

SweepQuantity quantity_from_name(const std::string& s) {
  if (s == "W0" || s == "w0") return SweepQuantity::W0;
  if (s == "Q0" || s == "q0") return SweepQuantity::Q0;
  if (s == "mandel_q") return SweepQuantity::MandelQ;
  if (s == "g2") return SweepQuantity::G2;
  if (s == "pnd_peak") return SweepQuantity::PndPeak;
  throw Error("invalid_state", "unknown sweep quantity: " + s);
}

namespace {

double pnd_peak_position(const StateSpec& spec, const Stage& stage) {
  // follow the distribution until 1 - 1e-6 of the mass is covered
  double cum = 0.0;
  double best = -1.0;
  int best_n = 0;
  for (int n = 0; n < 4000; ++n) {
    const double p = pnd(spec, stage, n);
    if (p > best) {
      best = p;
      best_n = n;
    }
    cum += p;
    if (cum > 1.0 - 1e-6 && n > 4 * best_n + 8) break;
  }
  return static_cast<double>(best_n);
}

double evaluate_quantity(const StateSpec& spec, const Stage& stage,
                         SweepQuantity q) {
  switch (q) {
    case SweepQuantity::W0:
      return quasiprob_point(spec, stage, KappaOrder::W, Complex{0, 0});
    case SweepQuantity::Q0:
      return quasiprob_point(spec, stage, KappaOrder::Q, Complex{0, 0});
    case SweepQuantity::MandelQ:
      return mandel_q(spec, stage);
    case SweepQuantity::G2:
      return g2(spec, stage);
    case SweepQuantity::PndPeak:
      return pnd_peak_position(spec, stage);
  }
  throw Error("invalid_state", "unknown quantity");
}

}  // namespace

SweepTable sweep(const StateSpec& spec_template, const Stage& stage,
                 SweepAxis axis, const std::vector<double>& values,
                 SweepQuantity quantity) {
  SweepTable table;
  table.axis = axis_name(axis);
  table.quantity = quantity_name(quantity);
  table.axis_values = values;
  table.values.reserve(values.size());
  table.annotations.reserve(values.size());
  for (const double v : values) {
    StateSpec spec = spec_template;
    Stage st = stage;
    try {
      switch (axis) {
        case SweepAxis::NTh: spec.n_th = v; break;
        case SweepAxis::Lambda: spec.lambda = v; break;
        case SweepAxis::S: st = Stage::output(v); break;
        case SweepAxis::M: {
          if (v < 0.0 || v != std::floor(v))
            throw Error("invalid_state", "m must be a nonnegative integer");
          spec.m = static_cast<int>(v);
          break;
        }
      }
      table.values.push_back(evaluate_quantity(spec, st, quantity));
      table.annotations.emplace_back();
    } catch (const Error& e) {
      table.values.push_back(std::numeric_limits<double>::quiet_NaN());
      table.annotations.emplace_back(e.reason());
    }
  }
  return table;
}

std::string to_string(PoissonClass c) {
  switch (c) {
    case PoissonClass::Sub: return "sub";
    case PoissonClass::Poissonian: return "poissonian";
    case PoissonClass::Super: return "super";
  }
  throw Error("invalid_state", "unknown class");
}

std::string to_string(BunchingClass c) {
  return c == BunchingClass::Bunching ? "bunching" : "antibunching";
}

StatClass classify_statistics(const StateSpec& spec, const Stage& stage) {
  const StatSummary st = stat_summary(spec, stage);
  StatClass c{};
  if (st.mandel_q < -1e-12) c.poisson = PoissonClass::Sub;
  else if (st.mandel_q > 1e-12) c.poisson = PoissonClass::Super;
  else c.poisson = PoissonClass::Poissonian;
  c.bunching = (st.g2 > 1.0 + 1e-12) ? BunchingClass::Bunching
                                     : BunchingClass::Antibunching;
  return c;
}

}  // namespace qpd
