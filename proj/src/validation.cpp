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

#include "qpd/validation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "qpd/fockoracle.hpp"
#include "qpd/photstat.hpp"
#include "qpd/quasiprob.hpp"

namespace qpd::validation {

namespace {

std::string point_label(const LatticePoint& p) {
  std::ostringstream os;
  os << family_name(p.spec.variant) << " n_th=" << p.spec.n_th
     << " m=" << p.spec.m;
  if (p.spec.variant == StateFamily::Pakfts) os << " k=" << p.spec.k;
  if (p.spec.is_squeezed()) os << " lambda=" << p.spec.lambda;
  if (p.stage.kind == StageKind::Output) os << " s=" << p.stage.s;
  else os << " input";
  return os.str();
}

std::vector<Stage> lattice_stages() {
  return {Stage::input(), Stage::output(0.3), Stage::output(1.0)};
}

// Per-point deviations, merged into the named checks afterwards.
struct PointResult {
  std::map<std::string, std::pair<double, std::string>> devs;

  void update(const std::string& name, double dev, const std::string& ctx) {
    auto& slot = devs[name];
    if (dev > slot.first) slot = {dev, ctx};
  }
};

// One channel-evolved oracle state per lattice point, with the cutoff picked
// from the state's photon content.
struct OracleState {
  fock::DensityMatrix in;   // input at working cutoff
  fock::DensityMatrix rho;  // stage state at working cutoff
  fock::DensityMatrix in_big;  // input at the moment-grade cutoff
};

OracleState make_oracle_state(const LatticePoint& p, const Options& opt) {
  OracleState st;
  fock::DensityMatrix probe = fock::build_state(p.spec, 60);
  const double mean_in = fock::oracle_moment(probe, 1);
  const double mean = mean_in + p.stage.noise();
  int cut = fock::recommended_cutoff(mean * 1.05 + 0.5, 1e-9);
  if (opt.cutoff_override > 0) cut = opt.cutoff_override;
  st.in = (cut == 60) ? probe : fock::build_state(p.spec, cut);
  st.rho = (p.stage.noise() == 0.0)
               ? st.in
               : fock::apply_channel_diffusion(st.in, p.stage.noise());
  int big = std::max(cut, fock::recommended_cutoff(mean_in * 1.05 + 0.5, 1e-11));
  if (opt.cutoff_override > 0) big = opt.cutoff_override;
  st.in_big = (big == cut) ? st.in : fock::build_state(p.spec, big);
  return st;
}

void check_point(const LatticePoint& p, const Options& opt,
                 PointResult& out) {
  const StateSpec& spec = p.spec;
  const Stage& stage = p.stage;
  const std::string label = point_label(p);

  // normalization vs trace of the unnormalized kernel
  {
    const double n_cf = normalization(spec);
    const int cut = spec.is_squeezed() ? 120 : 80;
    const double n_or = fock::build_unnormalized(spec, cut).trace_real();
    out.update("normalization vs oracle trace (rel)",
               std::abs(n_cf - n_or) / std::abs(n_or), label);
  }

  // chi(0) = 1 for admissible kappa; guard consistency otherwise
  for (const KappaOrder kappa :
       {KappaOrder::Q, KappaOrder::W, KappaOrder::P}) {
    const auto adm = convergence_guard(spec, stage, kappa);
    if (!adm.admissible) continue;
    const Complex c0 = char_fn(spec, stage, kappa, Complex{0, 0});
    out.update("chi(0,kappa) = 1", std::abs(c0 - Complex{1, 0}), label);
  }

  // PND normalization with certified tail
  {
    const PndResult full = pnd_full(spec, stage, 80);
    double sum = full.tail_bound;
    for (const double v : full.probabilities) sum += v;
    out.update("sum PND = 1", std::abs(sum - 1.0), label);
  }

  const OracleState oracle = make_oracle_state(p, opt);

  // Wigner and Q on the 9x9 grid in [-3,3]^2
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      const Complex alpha{-3.0 + 0.75 * i, -3.0 + 0.75 * j};
      const double w_cf =
          quasiprob_point(spec, stage, KappaOrder::W, alpha);
      const double w_or = fock::oracle_wigner(oracle.rho, alpha);
      out.update("Wigner vs oracle", std::abs(w_cf - w_or), label);
      const double q_cf =
          quasiprob_point(spec, stage, KappaOrder::Q, alpha);
      const double q_or = fock::oracle_q(oracle.rho, alpha);
      out.update("Q vs oracle", std::abs(q_cf - q_or), label);
    }
  }

  // characteristic function on a gamma sample, every admissible kappa
  const Complex gammas[] = {{0.3, 0.0}, {0.0, 0.7},  {0.5, 0.4},
                            {1.2, -0.3}, {-0.8, 0.9}, {1.6, 1.0}};
  for (const KappaOrder kappa :
       {KappaOrder::Q, KappaOrder::W, KappaOrder::P}) {
    if (!convergence_guard(spec, stage, kappa).admissible) continue;
    for (const Complex g : gammas) {
      const Complex c_cf = char_fn(spec, stage, kappa, g);
      const Complex c_or = fock::oracle_char(oracle.rho, g, kappa);
      out.update("chi vs oracle", std::abs(c_cf - c_or), label);
    }
  }

  // photon-number distribution
  for (int n = 0; n <= 24; ++n) {
    const double p_cf = pnd(spec, stage, n);
    const double p_or = fock::oracle_pnd(oracle.rho, n);
    out.update("PND vs oracle", std::abs(p_cf - p_or), label);
  }

  // factorial moments r = 1, 2 (relative)
  for (int r = 1; r <= 2; ++r) {
    const double m_cf = moment(spec, stage, r);
    const double m_or = fock::oracle_output_moment(
        oracle.in_big, stage.noise(), r,
        opt.quad_order_override > 0 ? opt.quad_order_override : 24);
    out.update("moments vs oracle (rel)",
               std::abs(m_cf - m_or) / std::max(1.0, std::abs(m_or)), label);
  }
}

ArbitrationRecord arbitrate_norm_form() {
  ArbitrationRecord rec;
  rec.name = "squeezed-added normalization evaluation point";
  rec.accepted = "reflected kernel at 1-B with alternating sign";
  rec.rejected = "direct kernel at B";
  for (const auto& [n_th, m, lam] :
       {std::tuple{0.5, 1, 0.3}, {0.2, 2, 0.2}, {1.0, 1, 0.4}}) {
    StateSpec spec{StateFamily::Pasts, n_th, m, 0, lam};
    const double tr = fock::build_unnormalized(spec, 120).trace_real();
    rec.accepted_dev = std::max(
        rec.accepted_dev,
        std::abs(normalization_variant(spec, PastsNormForm::Reflected) - tr) /
            tr);
    rec.rejected_dev = std::max(
        rec.rejected_dev,
        std::abs(normalization_variant(spec, PastsNormForm::DirectAtB) - tr) /
            tr);
  }
  return rec;
}

ArbitrationRecord arbitrate_subtracted_shift() {
  ArbitrationRecord rec;
  rec.name = "subtracted-family output distribution ordering shift";
  rec.accepted = "(kappa-1)/2";
  rec.rejected = "(kappa+1)/2";
  for (const auto& [n_th, m, s] :
       {std::tuple{0.5, 1, 0.4}, {0.3, 2, 0.3}}) {
    StateSpec spec{StateFamily::Psts, n_th, m, 0, 0.0};
    const Stage stage = Stage::output(s);
    const auto rho = fock::apply_channel_diffusion(
        fock::build_state(spec, 80), s);
    for (const Complex alpha : {Complex{0, 0}, Complex{0.6, 0}}) {
      const double w_or = fock::oracle_wigner(rho, alpha);
      rec.accepted_dev = std::max(
          rec.accepted_dev,
          std::abs(quasiprob_point_variant(
                       spec, stage, KappaOrder::W, alpha,
                       SubtractedOutputShift::HalfKappaMinusOne) -
                   w_or));
      rec.rejected_dev = std::max(
          rec.rejected_dev,
          std::abs(quasiprob_point_variant(
                       spec, stage, KappaOrder::W, alpha,
                       SubtractedOutputShift::HalfKappaPlusOne) -
                   w_or));
    }
  }
  return rec;
}

ArbitrationRecord arbitrate_psts_pnd_point() {
  ArbitrationRecord rec;
  rec.name = "subtracted-thermal output distribution evaluation point";
  rec.accepted = "u = -1";
  rec.rejected = "u = 0";
  for (const auto& [n_th, m, s, n] :
       {std::tuple{0.5, 1, 0.4, 2}, {0.3, 2, 0.5, 1}}) {
    StateSpec spec{StateFamily::Psts, n_th, m, 0, 0.0};
    const Stage stage = Stage::output(s);
    const auto rho = fock::apply_channel_diffusion(
        fock::build_state(spec, 80), s);
    const double p_or = fock::oracle_pnd(rho, n);
    rec.accepted_dev = std::max(
        rec.accepted_dev,
        std::abs(pnd_variant(spec, stage, n, PstsOutputPndPoint::MinusOne) -
                 p_or));
    rec.rejected_dev = std::max(
        rec.rejected_dev,
        std::abs(pnd_variant(spec, stage, n, PstsOutputPndPoint::Zero) -
                 p_or));
  }
  return rec;
}

ArbitrationRecord arbitrate_pasts_pnd_point() {
  ArbitrationRecord rec;
  rec.name = "squeezed-added photon-number kernel evaluation point";
  rec.accepted = "u = 0";
  rec.rejected = "u = 1";
  for (const auto& [n_th, m, lam, n] :
       {std::tuple{0.5, 1, 0.3, 2}, {0.2, 2, 0.2, 3}}) {
    StateSpec spec{StateFamily::Pasts, n_th, m, 0, lam};
    const Stage stage = Stage::input();
    const auto rho = fock::build_state(spec, 100);
    const double p_or = fock::oracle_pnd(rho, n);
    rec.accepted_dev = std::max(
        rec.accepted_dev,
        std::abs(pasts_pnd_variant(spec, stage, n, PastsPndPoint::Zero) -
                 p_or));
    rec.rejected_dev = std::max(
        rec.rejected_dev,
        std::abs(pasts_pnd_variant(spec, stage, n, PastsPndPoint::One) -
                 p_or));
  }
  return rec;
}

}  // namespace

void CheckResult::update(double dev, const std::string& context) {
  ++points;
  if (dev > max_dev) {
    max_dev = dev;
    worst_context = context;
  }
}

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass()) return false;
  for (const auto& a : arbitration)
    if (!a.separated()) return false;
  return true;
}

std::vector<LatticePoint> full_lattice() {
  std::vector<LatticePoint> lattice;
  const double nths[] = {0.1, 0.5, 1.0};
  const int ms[] = {0, 1, 2};
  const int ks[] = {0, 1, 2};
  const double lambdas[] = {0.0, 0.2, 0.4};
  for (const Stage& stage : lattice_stages()) {
    for (const double n_th : nths) {
      for (const int m : ms) {
        lattice.push_back({{StateFamily::Pats, n_th, m, 0, 0.0}, stage});
        lattice.push_back({{StateFamily::Psts, n_th, m, 0, 0.0}, stage});
        for (const int k : ks)
          lattice.push_back({{StateFamily::Pakfts, n_th, m, k, 0.0}, stage});
        for (const double lam : lambdas) {
          lattice.push_back({{StateFamily::Pasts, n_th, m, 0, lam}, stage});
          lattice.push_back({{StateFamily::Pssts, n_th, m, 0, lam}, stage});
        }
      }
    }
  }
  return lattice;
}

std::vector<LatticePoint> spot_lattice() {
  std::vector<LatticePoint> lattice;
  for (const Stage& stage : {Stage::input(), Stage::output(0.3)}) {
    lattice.push_back({{StateFamily::Pats, 0.2, 1, 0, 0.0}, stage});
    lattice.push_back({{StateFamily::Psts, 0.5, 1, 0, 0.0}, stage});
    lattice.push_back({{StateFamily::Pakfts, 0.2, 1, 1, 0.0}, stage});
    lattice.push_back({{StateFamily::Pasts, 0.2, 1, 0, 0.2}, stage});
    lattice.push_back({{StateFamily::Pssts, 0.2, 1, 0, 0.3}, stage});
  }
  return lattice;
}

Report run_validation(Level level, const Options& options) {
  const std::vector<LatticePoint> lattice =
      (level == Level::Full) ? full_lattice() : spot_lattice();
  int threads = options.threads;
  if (threads <= 0)
    threads = std::max(1u, std::thread::hardware_concurrency());

  std::vector<PointResult> results(lattice.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= lattice.size()) break;
      check_point(lattice[i], options, results[i]);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  Report report;
  auto add_check = [&report](const std::string& name, double tol) {
    CheckResult c;
    c.name = name;
    c.tolerance = tol;
    report.checks.push_back(c);
    return report.checks.size() - 1;
  };
  add_check("normalization vs oracle trace (rel)", 1e-8);
  add_check("chi(0,kappa) = 1", 1e-12);
  add_check("sum PND = 1", 1e-9);
  add_check("Wigner vs oracle", 1e-6);
  add_check("Q vs oracle", 1e-6);
  add_check("chi vs oracle", 1e-6);
  add_check("PND vs oracle", 1e-7);
  add_check("moments vs oracle (rel)", 1e-7);

  for (const auto& pr : results)
    for (const auto& [name, dev] : pr.devs)
      for (auto& check : report.checks)
        if (check.name == name) check.update(dev.first, dev.second);

  report.arbitration.push_back(arbitrate_norm_form());
  report.arbitration.push_back(arbitrate_subtracted_shift());
  report.arbitration.push_back(arbitrate_psts_pnd_point());
  report.arbitration.push_back(arbitrate_pasts_pnd_point());
  return report;
}

void print_report(std::ostream& os, const Report& report) {
  os << "validation report\n";
  os << "-----------------\n";
  for (const auto& c : report.checks) {
    os << (c.pass() ? "[PASS] " : "[FAIL] ") << c.name << ": max dev "
       << std::scientific << std::setprecision(3) << c.max_dev << " (tol "
       << c.tolerance << ", " << c.points << " worst-of points)";
    if (!c.worst_context.empty()) os << " worst at: " << c.worst_context;
    os << '\n';
  }
  os << "\nconvention arbitration (Fock-space evidence)\n";
  for (const auto& a : report.arbitration) {
    os << (a.separated() ? "[PASS] " : "[FAIL] ") << a.name << '\n'
       << "       accepted: " << a.accepted << "  (max dev "
       << std::scientific << std::setprecision(3) << a.accepted_dev << ")\n"
       << "       rejected: " << a.rejected << "  (max dev " << a.rejected_dev
       << ", separation "
       << (a.rejected_dev / std::max(a.accepted_dev, 1e-300)) << "x)\n";
  }
  os.flush();
}

}  // namespace qpd::validation
