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

// Command-line front end: compute quasi-probability fields, photon
// statistics, noise thresholds and parameter sweeps for the five
// non-Gaussian state families, before and after the classical-noise
// Gaussian channel, and run the closed-form-vs-Fock validation.
//
// Exit codes: 0 ok, 1 I/O failure, 2 domain or guard violation,
// 3 validation failure.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpd/analysis.hpp"
#include "qpd/io.hpp"
#include "qpd/photstat.hpp"
#include "qpd/quasiprob.hpp"
#include "qpd/validation.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
  std::string state = "pats";
  double nth = 0.0;
  int m = 0;
  int k = 0;
  double lambda = 0.0;
  std::string stage = "input";
  double s = 0.0;
  std::string out_path;
  std::string format = "csv";
  std::string config_path;
  bool reproducible = false;
};

void add_state_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--state", o.state,
                  "state family: pats|psts|pakfts|pasts|pssts");
  cmd->add_option("--nth", o.nth, "mean thermal photon number");
  cmd->add_option("--m", o.m, "photons added/subtracted");
  cmd->add_option("--k", o.k, "filtered Fock index (pakfts)");
  cmd->add_option("--lambda", o.lambda, "squeezing parameter");
  cmd->add_option("--stage", o.stage, "input|output");
  cmd->add_option("--s", o.s, "channel noise parameter (output stage)");
  cmd->add_option("--out", o.out_path, "output file (default: stdout)");
  cmd->add_option("--format", o.format, "csv|json");
  cmd->add_option("--config", o.config_path,
                  "JSON run configuration; explicit flags override it");
  cmd->add_flag("--reproducible", o.reproducible,
                "suppress the timestamp comment in text outputs");
}

// --config file values fill any field the command line left untouched
void merge_config(const CLI::App* cmd, CommonOpts& o, json* extra) {
  if (o.config_path.empty()) return;
  std::ifstream in(o.config_path);
  if (!in) throw qpd::Error("io", "cannot open config " + o.config_path);
  json cfg = json::parse(in);
  auto take = [&](const char* flag, const char* key, auto& slot) {
    if (cfg.contains(key) && cmd->count(flag) == 0)
      slot = cfg.at(key).get<std::decay_t<decltype(slot)>>();
  };
  if (cfg.contains("state") && cfg["state"].is_object()) {
    const json st = cfg["state"];
    auto take_state = [&](const char* flag, const char* key, auto& slot) {
      if (st.contains(key) && cmd->count(flag) == 0)
        slot = st.at(key).get<std::decay_t<decltype(slot)>>();
    };
    take_state("--state", "variant", o.state);
    take_state("--nth", "n_th", o.nth);
    take_state("--m", "m", o.m);
    take_state("--k", "k", o.k);
    take_state("--lambda", "lambda", o.lambda);
  } else {
    take("--state", "variant", o.state);
    take("--nth", "n_th", o.nth);
    take("--m", "m", o.m);
    take("--k", "k", o.k);
    take("--lambda", "lambda", o.lambda);
  }
  take("--stage", "stage", o.stage);
  take("--s", "s", o.s);
  take("--format", "format", o.format);
  take("--out", "output_path", o.out_path);
  if (extra) *extra = cfg;
}

qpd::StateSpec to_spec(const CommonOpts& o) {
  qpd::StateSpec spec;
  spec.variant = qpd::family_from_name(o.state);
  spec.n_th = o.nth;
  spec.m = o.m;
  spec.k = o.k;
  spec.lambda = o.lambda;
  spec.validate();
  return spec;
}

qpd::Stage to_stage(const CommonOpts& o) {
  if (o.stage == "input") return qpd::Stage::input();
  if (o.stage == "output") return qpd::Stage::output(o.s);
  throw qpd::Error("invalid_state", "stage must be input or output");
}

// "-4:4:81" -> square grid; "a:b:n,c:d:m" -> separate axes
qpd::PhaseGrid parse_grid(const std::string& text) {
  auto parse_axis = [](const std::string& part) {
    double lo, hi;
    int n;
    char c1, c2;
    std::istringstream is(part);
    if (!(is >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':')
      throw qpd::Error("invalid_state", "grid must be min:max:n");
    return std::tuple<double, double, int>{lo, hi, n};
  };
  qpd::PhaseGrid grid{};
  const auto comma = text.find(',');
  const auto [rlo, rhi, rn] = parse_axis(text.substr(0, comma));
  grid.re_min = rlo;
  grid.re_max = rhi;
  grid.n_re = rn;
  if (comma == std::string::npos) {
    grid.im_min = rlo;
    grid.im_max = rhi;
    grid.n_im = rn;
  } else {
    const auto [ilo, ihi, in_] = parse_axis(text.substr(comma + 1));
    grid.im_min = ilo;
    grid.im_max = ihi;
    grid.n_im = in_;
  }
  grid.validate();
  return grid;
}

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw qpd::Error("io", "cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void done() {
    if (file_.is_open()) {
      file_.flush();
      if (!file_) throw qpd::Error("io", "write failure");
    }
  }

 private:
  std::ofstream file_;
};

void maybe_stamp(std::ostream& os, const CommonOpts& o,
                 const std::string& what) {
  if (o.reproducible) return;
  const auto now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  char buf[64];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&now));
  os << "# qpd " << what << " " << buf << "\n";
}

int cmd_quasiprob(const CommonOpts& o, const std::string& grid_text,
                  int kappa_int) {
  const qpd::StateSpec spec = to_spec(o);
  const qpd::Stage stage = to_stage(o);
  const qpd::KappaOrder kappa = qpd::kappa_from_int(kappa_int);
  const auto adm = qpd::convergence_guard(spec, stage, kappa);
  if (!adm.admissible)
    throw qpd::Error("singular_p", adm.reason);
  const qpd::PhaseGrid grid = parse_grid(grid_text);
  const qpd::PhaseField field = qpd::quasiprob_grid(spec, stage, kappa, grid);
  Sink sink(o.out_path);
  maybe_stamp(sink.stream(), o, "quasiprob");
  qpd::write_phase_field_csv(sink.stream(), field);
  sink.done();
  return 0;
}

int cmd_stats(const CommonOpts& o, int n_max) {
  const qpd::StateSpec spec = to_spec(o);
  const qpd::Stage stage = to_stage(o);
  const qpd::StatSummary summary = qpd::stat_summary(spec, stage);
  const qpd::StatClass cls = qpd::classify_statistics(spec, stage);
  const qpd::PndResult dist = qpd::pnd_full(spec, stage, n_max);
  Sink sink(o.out_path);
  if (o.format == "json") {
    nlohmann::ordered_json j =
        nlohmann::ordered_json::parse(qpd::stat_summary_json(summary, cls));
    nlohmann::ordered_json probs = nlohmann::ordered_json::array();
    for (double p : dist.probabilities) probs.push_back(p);
    j["pnd"] = probs;
    j["pnd_tail_bound"] = dist.tail_bound;
    sink.stream() << j.dump(2) << "\n";
  } else {
    maybe_stamp(sink.stream(), o, "stats");
    sink.stream() << "# " << qpd::stat_summary_json(summary, cls) << "\n";
    qpd::write_pnd_csv(sink.stream(), dist);
  }
  sink.done();
  return 0;
}

int cmd_threshold(const CommonOpts& o, double s_max, double tol) {
  const qpd::StateSpec spec = to_spec(o);
  const qpd::ThresholdResult res =
      qpd::wigner_center_threshold(spec, s_max, tol);
  Sink sink(o.out_path);
  sink.stream() << qpd::threshold_json(res) << "\n";
  sink.done();
  return 0;
}

int cmd_sweep(const CommonOpts& o, const std::string& axis,
              const std::string& quantity, double from, double to,
              int steps) {
  if (steps < 1) throw qpd::Error("invalid_state", "steps must be >= 1");
  const qpd::StateSpec spec = to_spec(o);
  const qpd::Stage stage = to_stage(o);
  std::vector<double> values;
  for (int i = 0; i < steps; ++i)
    values.push_back(steps == 1 ? from
                                : from + (to - from) * i / (steps - 1));
  const qpd::SweepTable table =
      qpd::sweep(spec, stage, qpd::axis_from_name(axis), values,
                 qpd::quantity_from_name(quantity));
  Sink sink(o.out_path);
  if (o.format == "json") {
    sink.stream() << qpd::sweep_json(table) << "\n";
  } else {
    maybe_stamp(sink.stream(), o, "sweep");
    qpd::write_sweep_csv(sink.stream(), table);
  }
  sink.done();
  return 0;
}

int cmd_validate(const CommonOpts& o, const std::string& level, int threads,
                 int cutoff, int quad_order) {
  qpd::validation::Level lv;
  if (level == "spot") lv = qpd::validation::Level::Spot;
  else if (level == "full") lv = qpd::validation::Level::Full;
  else if (level == "off") return 0;
  else throw qpd::Error("invalid_state", "level must be off|spot|full");
  qpd::validation::Options opts;
  opts.threads = threads;
  opts.cutoff_override = cutoff;
  opts.quad_order_override = quad_order;
  const qpd::validation::Report report =
      qpd::validation::run_validation(lv, opts);
  Sink sink(o.out_path);
  qpd::validation::print_report(sink.stream(), report);
  sink.done();
  return report.all_pass() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "quasi-probability distributions and photon statistics of "
      "non-Gaussian states under a classical-noise Gaussian channel"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string grid_text = "-4:4:81";
  int kappa_int = 0;
  int n_max = 60;
  double s_max = 4.0, tol = 1e-8;
  std::string axis = "s", quantity = "W0";
  double from = 0.0, to = 1.0;
  int steps = 6;
  std::string level = "spot";
  int threads = 0;
  int cutoff = 0, quad_order = 0;

  CLI::App* qp = app.add_subcommand(
      "quasiprob", "sample a quasi-probability distribution on a grid");
  add_state_flags(qp, o);
  qp->add_option("--kappa", kappa_int, "-1 (Q), 0 (W) or 1 (P)");
  qp->add_option("--grid", grid_text, "min:max:n[,min:max:n]");

  CLI::App* st = app.add_subcommand(
      "stats", "photon-number distribution, Mandel Q and g2");
  add_state_flags(st, o);
  st->add_option("--nmax", n_max, "largest photon number in the table");

  CLI::App* th = app.add_subcommand(
      "threshold", "noise level where the central Wigner value changes sign");
  add_state_flags(th, o);
  th->add_option("--smax", s_max, "search bracket upper end");
  th->add_option("--tol", tol, "|W(0)| tolerance at the root");

  CLI::App* sw = app.add_subcommand("sweep", "tabulate a quantity along an axis");
  add_state_flags(sw, o);
  sw->add_option("--axis", axis, "nth|lambda|s|m");
  sw->add_option("--quantity", quantity, "W0|Q0|mandel_q|g2|pnd_peak");
  sw->add_option("--from", from);
  sw->add_option("--to", to);
  sw->add_option("--steps", steps);

  CLI::App* va = app.add_subcommand(
      "validate", "closed forms against the truncated Fock oracle");
  add_state_flags(va, o);
  va->add_option("--level", level, "off|spot|full");
  va->add_option("--threads", threads, "worker threads (0 = hardware)");
  va->add_option("--cutoff", cutoff, "pin the oracle cutoff (0 = automatic)");
  va->add_option("--quad-order", quad_order,
                 "pin the channel quadrature order (0 = default)");

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* active = app.get_subcommands().front();
    merge_config(active, o, nullptr);
    if (qp->parsed()) return cmd_quasiprob(o, grid_text, kappa_int);
    if (st->parsed()) return cmd_stats(o, n_max);
    if (th->parsed()) return cmd_threshold(o, s_max, tol);
    if (sw->parsed()) return cmd_sweep(o, axis, quantity, from, to, steps);
    if (va->parsed()) return cmd_validate(o, level, threads, cutoff, quad_order);
  } catch (const qpd::Error& e) {
    std::cerr << "error=" << e.reason() << " msg=" << e.what() << "\n";
    return e.reason() == "io" ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error=internal msg=" << e.what() << "\n";
    return 2;
  }
  return 0;
}
