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

#include "qpd/fockoracle.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "qpd/numkernel.hpp"

namespace qpd::fock {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix creation_op(int cutoff) { return annihilation_op(cutoff).adjoint(); }

Eigen::VectorXd thermal_weights(double n_th, int cutoff) {
  Eigen::VectorXd w(cutoff);
  if (n_th == 0.0) {
    w.setZero();
    w(0) = 1.0;
    return w;
  }
  const double q = n_th / (1.0 + n_th);
  double v = 1.0 / (1.0 + n_th);
  for (int n = 0; n < cutoff; ++n) {
    w(n) = v;
    v *= q;
  }
  return w;
}

void check_thermal_tail(double n_th, int cutoff) {
  if (n_th == 0.0) return;
  const double q = n_th / (1.0 + n_th);
  const double tail = std::pow(q, cutoff) / (1.0 - q);
  if (tail > 1e-10)
    throw Error("truncation", "thermal tail " + std::to_string(tail) +
                                  " too heavy at this cutoff");
}

// coherent-state amplitudes <n|z>, computed in log space
Eigen::VectorXcd coherent_vector(Complex z, int cutoff) {
  Eigen::VectorXcd v(cutoff);
  if (z == Complex{0.0, 0.0}) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  const double lz = std::log(std::abs(z));
  const Complex phase = z / std::abs(z);
  const double ex = -0.5 * std::norm(z);
  Complex ph{1.0, 0.0};
  for (int n = 0; n < cutoff; ++n) {
    v(n) = ph * std::exp(ex + n * lz - 0.5 * log_factorial(n));
    ph *= phase;
  }
  return v;
}

// cache of squeeze operators (few distinct lambdas per run)
Matrix squeeze_cached(double lambda, int cutoff) {
  static std::mutex mu;
  static std::map<std::pair<double, int>, Matrix> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(lambda, cutoff);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Matrix S = squeeze_operator(lambda, cutoff);
  cache.emplace(key, S);
  return S;
}

}  // namespace

double DensityMatrix::hermiticity_defect() const {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es((rho + rho.adjoint()) * 0.5);
  return es.eigenvalues().minCoeff();
}

double DensityMatrix::purity() const { return (rho * rho).trace().real(); }

Matrix annihilation_op(int cutoff) {
  Matrix a = Matrix::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

Matrix squeeze_operator(double lambda, int cutoff) {
  // exp((lambda/2)(a+^2 - a^2)); the generator is real
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(cutoff, cutoff);
  for (int n = 0; n + 2 < cutoff; ++n) {
    const double c = 0.5 * lambda * std::sqrt(double(n + 1) * double(n + 2));
    g(n + 2, n) += c;   // a+^2
    g(n, n + 2) -= c;   // -a^2
  }
  Eigen::MatrixXd S = g.exp();
  return S.cast<Complex>();
}

Matrix displacement_matrix(Complex z, int cutoff) {
  if (z == Complex{0.0, 0.0})
    return Matrix::Identity(cutoff, cutoff);
  Matrix D(cutoff, cutoff);
  const double x = std::norm(z);
  const double lz = std::log(std::abs(z));
  const double ex = -0.5 * x;
  // D_{n+a,n} = sqrt(n!/(n+a)!) z^a e^{-x/2} L_n^{(a)}(x); run the scaled
  // three-term recurrence along each diagonal. The lower triangle follows
  // from D(z)^+ = D(-z).
  for (int lower = 0; lower < 2; ++lower) {
    const Complex phase =
        (lower == 0) ? z / std::abs(z) : -std::conj(z) / std::abs(z);
    Complex ph{1.0, 0.0};
    for (int a = 0; a < cutoff; ++a, ph *= phase) {
      if (lower == 1 && a == 0) continue;
      const Complex t0 = ph * std::exp(ex + a * lz - 0.5 * log_factorial(a));
      if (lower == 0) D(a, 0) = t0;
      else D(0, a) = t0;
      if (cutoff - a < 2) continue;
      Complex tm = t0;
      Complex t = t0 * (1.0 + a - x) / std::sqrt(1.0 + a);
      if (lower == 0) D(a + 1, 1) = t;
      else D(1, a + 1) = t;
      for (int n = 1; n < cutoff - a - 1; ++n) {
        const Complex tn =
            ((2.0 * n + 1.0 + a - x) * t -
             std::sqrt(double(n) * (n + a)) * tm) /
            std::sqrt(double(n + 1) * (n + 1 + a));
        if (lower == 0) D(n + 1 + a, n + 1) = tn;
        else D(n + 1, n + 1 + a) = tn;
        tm = t;
        t = tn;
      }
    }
  }
  return D;
}

GaussHermite gauss_hermite(int order) {
  if (order < 8) throw Error("range", "quadrature order must be >= 8");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
  for (int i = 1; i < order; ++i) {
    const double b = std::sqrt(0.5 * i);
    J(i, i - 1) = b;
    J(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussHermite gh;
  gh.nodes.resize(order);
  gh.weights.resize(order);
  const double sqrt_pi = std::sqrt(kPi);
  for (int i = 0; i < order; ++i) {
    gh.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    gh.weights[i] = sqrt_pi * v0 * v0;
  }
  return gh;
}

DensityMatrix build_unnormalized(const StateSpec& spec, int cutoff) {
  spec.validate();
  check_thermal_tail(spec.n_th, cutoff);
  if (spec.is_squeezed() && cutoff < 60)
    throw Error("truncation", "squeezed construction needs cutoff >= 60");
  const ThermalCoeffs tc = thermal_coeffs(spec.n_th);
  const Matrix a = annihilation_op(cutoff);
  const Matrix ad = creation_op(cutoff);
  Matrix rho = thermal_weights(spec.n_th, cutoff).cast<Complex>().asDiagonal();

  switch (spec.variant) {
    case StateFamily::Pats: {
      rho /= tc.A;
      for (int i = 0; i < spec.m; ++i) rho = ad * rho * a;
      break;
    }
    case StateFamily::Psts: {
      rho *= spec.n_th;
      for (int i = 0; i < spec.m; ++i) rho = a * rho * ad;
      break;
    }
    case StateFamily::Pakfts: {
      rho /= tc.A;
      rho(spec.k, spec.k) -= std::pow(tc.q, spec.k);
      for (int i = 0; i < spec.m; ++i) rho = ad * rho * a;
      break;
    }
    case StateFamily::Pasts:
    case StateFamily::Pssts: {
      const Matrix S = squeeze_cached(spec.lambda, cutoff);
      rho = S * rho * S.adjoint();
      if (spec.variant == StateFamily::Pasts)
        for (int i = 0; i < spec.m; ++i) rho = ad * rho * a;
      else
        for (int i = 0; i < spec.m; ++i) rho = a * rho * ad;
      break;
    }
  }
  return {rho};
}

DensityMatrix build_state(const StateSpec& spec, int cutoff) {
  DensityMatrix dm = build_unnormalized(spec, cutoff);
  const double tr = dm.trace_real();
  if (!(tr > 1e-14))
    throw Error("zero_norm", "state kernel has vanishing trace");
  dm.rho /= tr;
  return dm;
}

DensityMatrix apply_channel(const DensityMatrix& rho, double s,
                            const QuadratureConfig& quad) {
  if (s < 0.0) throw Error("invalid_state", "noise parameter must be >= 0");
  if (s == 0.0) return rho;
  const int N = rho.cutoff();
  const GaussHermite gh = gauss_hermite(quad.order_per_axis);
  const double rs = std::sqrt(s);
  Matrix out = Matrix::Zero(N, N);
  for (int i = 0; i < quad.order_per_axis; ++i) {
    for (int j = 0; j < quad.order_per_axis; ++j) {
      const Complex z{rs * gh.nodes[i], rs * gh.nodes[j]};
      const Matrix D = displacement_matrix(z, N);
      out.noalias() += (gh.weights[i] * gh.weights[j]) *
                       (D * rho.rho * D.adjoint());
    }
  }
  out /= kPi;
  const double drift = std::abs(out.trace().real() - rho.trace_real());
  if (drift > 1e-6)
    throw Error("quadrature_order",
                "channel trace drift " + std::to_string(drift) +
                    "; raise the quadrature order or cutoff");
  return {out};
}

DensityMatrix apply_channel_diffusion(const DensityMatrix& rho, double s) {
  if (s < 0.0) throw Error("invalid_state", "noise parameter must be >= 0");
  if (s == 0.0) return rho;
  const int N = rho.cutoff();

  // L(rho)_{ij} = sqrt(ij) rho_{i-1,j-1} + sqrt((i+1)(j+1)) rho_{i+1,j+1}
  //             - (i+j+1) rho_{ij}
  const auto apply_gen = [N](const Matrix& r) {
    Matrix out(N, N);
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        Complex v = -(double(i) + double(j) + 1.0) * r(i, j);
        if (i > 0 && j > 0)
          v += std::sqrt(double(i) * double(j)) * r(i - 1, j - 1);
        if (i + 1 < N && j + 1 < N)
          v += std::sqrt(double(i + 1) * double(j + 1)) * r(i + 1, j + 1);
        out(i, j) = v;
      }
    }
    return out;
  };

  const double gen_norm = 4.0 * N + 2.0;
  const int substeps = std::max(1, static_cast<int>(std::ceil(s * gen_norm / 4.0)));
  const double sigma = s / substeps;
  Matrix cur = rho.rho;
  for (int step = 0; step < substeps; ++step) {
    Matrix acc = cur;
    Matrix term = cur;
    for (int k = 1; k <= 80; ++k) {
      term = apply_gen(term);
      term *= sigma / k;
      acc += term;
      if (term.cwiseAbs().maxCoeff() < 1e-17) break;
    }
    cur = acc;
  }
  return {cur};
}

double oracle_wigner(const DensityMatrix& rho, Complex alpha) {
  const int N = rho.cutoff();
  if (std::abs(alpha) > N / 8.0)
    throw Error("range", "phase-space point too far out for this cutoff");
  // W(alpha) = (2/pi) Tr[rho D(2 alpha) Pi], parity absorbed into the trace
  const Matrix D = displacement_matrix(2.0 * alpha, N);
  Complex tr{0.0, 0.0};
  for (int n = 0; n < N; ++n) {
    Complex row{0.0, 0.0};
    for (int m = 0; m < N; ++m) row += rho.rho(n, m) * D(m, n);
    tr += ((n % 2 == 0) ? 1.0 : -1.0) * row;
  }
  return 2.0 / kPi * tr.real();
}

double oracle_q(const DensityMatrix& rho, Complex alpha) {
  const int N = rho.cutoff();
  if (std::abs(alpha) > N / 8.0)
    throw Error("range", "phase-space point too far out for this cutoff");
  const Eigen::VectorXcd c = coherent_vector(alpha, N);
  return (c.adjoint() * rho.rho * c)(0, 0).real() / kPi;
}

Complex oracle_char(const DensityMatrix& rho, Complex gamma, KappaOrder kappa) {
  const int N = rho.cutoff();
  if (std::abs(gamma) > N / 8.0)
    throw Error("range", "argument too far out for this cutoff");
  const Matrix D = displacement_matrix(gamma, N);
  const Complex tr = (rho.rho * D).trace();
  return tr * std::exp(0.5 * kappa_value(kappa) * std::norm(gamma));
}

double oracle_pnd(const DensityMatrix& rho, int n) {
  if (n < 0 || n >= rho.cutoff())
    throw Error("range", "photon number outside the truncated basis");
  return rho.rho(n, n).real();
}

double oracle_moment(const DensityMatrix& rho, int r) {
  const int N = rho.cutoff();
  if (r < 0 || r >= N) throw Error("range", "moment order outside the basis");
  double acc = 0.0;
  for (int n = r; n < N; ++n)
    acc += factorial_ratio(n, n - r) * rho.rho(n, n).real();
  return acc;
}

double oracle_output_moment(const DensityMatrix& rho_in, double s, int r,
                            int quad_order) {
  const int N = rho_in.cutoff();
  if (r < 0 || r >= N) throw Error("range", "moment order outside the basis");
  // normally ordered input moments <a+^q a^p> for p,q <= r
  Eigen::MatrixXcd mom(r + 1, r + 1);
  for (int p = 0; p <= r; ++p)
    for (int q = 0; q <= r; ++q) {
      Complex acc{0.0, 0.0};
      for (int n = p; n < N; ++n) {
        const int row = n - p + q;
        if (row >= N) break;
        acc += std::sqrt(factorial_ratio(n, n - p) *
                         factorial_ratio(row, n - p)) *
               rho_in.rho(n, row);
      }
      mom(q, p) = acc;
    }
  if (s == 0.0) return mom(r, r).real();
  const GaussHermite gh = gauss_hermite(quad_order);
  const double rs = std::sqrt(s);
  double total = 0.0;
  for (int i = 0; i < quad_order; ++i) {
    for (int j = 0; j < quad_order; ++j) {
      const Complex z{rs * gh.nodes[i], rs * gh.nodes[j]};
      // Tr[rho (a+ + conj z)^r (a + z)^r]
      Complex val{0.0, 0.0};
      for (int p = 0; p <= r; ++p)
        for (int q = 0; q <= r; ++q) {
          const double bp = factorial(r) / (factorial(p) * factorial(r - p));
          const double bq = factorial(r) / (factorial(q) * factorial(r - q));
          val += bp * bq * std::pow(std::conj(z), r - q) *
                 std::pow(z, r - p) * mom(q, p);
        }
      total += gh.weights[i] * gh.weights[j] * val.real();
    }
  }
  return total / kPi;
}

int recommended_cutoff(double mean_photons, double tail_target) {
  const double mu = std::max(mean_photons, 0.25);
  const double q = mu / (mu + 1.0);
  int n = 60;
  while (n < 320 &&
         std::pow(q, n) * (double(n) * n) > tail_target)
    n += 10;
  return n;
}

}  // namespace qpd::fock
