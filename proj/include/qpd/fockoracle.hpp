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

#ifndef QPD_FOCKORACLE_HPP
#define QPD_FOCKORACLE_HPP

#include <Eigen/Dense>

#include "qpd/quasiprob.hpp"
#include "qpd/states.hpp"

// Brute-force ground truth in a truncated Fock space. Everything here is
// built from operator matrices and quadrature; none of it touches the
// closed-form evaluators it is used to check.

namespace qpd::fock {

using Matrix = Eigen::MatrixXcd;

struct DensityMatrix {
  Matrix rho;
  int cutoff() const { return static_cast<int>(rho.rows()); }

  double trace_real() const { return rho.trace().real(); }
  double hermiticity_defect() const;
  double min_eigenvalue() const;
  double purity() const;
};

struct QuadratureConfig {
  int order_per_axis = 24;
};

Matrix annihilation_op(int cutoff);
Matrix squeeze_operator(double lambda, int cutoff);

/// Displacement matrix from the scaled associated-Laguerre diagonal
/// recurrences; elements are accurate to machine precision for any z.
Matrix displacement_matrix(Complex z, int cutoff);

struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;
};
/// Nodes and weights for integral of exp(-t^2) f(t) dt (physicists'
/// convention), from the Jacobi-matrix eigenproblem.
GaussHermite gauss_hermite(int order);

/// Normalized truncated state. Construction: thermal diagonal, optional
/// squeeze, optional filtration of Fock component k, m-fold raising or
/// lowering, final renormalization. Throws "truncation" when the thermal
/// tail at the cutoff is too heavy.
DensityMatrix build_state(const StateSpec& spec, int cutoff);

/// The family's unnormalized kernel; its trace is what normalization()
/// computes.
DensityMatrix build_unnormalized(const StateSpec& spec, int cutoff);

/// Classical-noise channel by product Gauss-Hermite quadrature over the
/// displacement plane. s = 0 returns the input unchanged. Trace drift
/// beyond 1e-6 throws "quadrature_order".
DensityMatrix apply_channel(const DensityMatrix& rho, double s,
                            const QuadratureConfig& quad = {});

/// Same channel evaluated as the diffusion semigroup exp(s L) with
/// L(rho) = a+ rho a + a rho a+ - {a+a + a a+, rho}/2, applied by a
/// scaled series. Cross-checked against apply_channel in the tests; used
/// where many channel applications are needed.
DensityMatrix apply_channel_diffusion(const DensityMatrix& rho, double s);

double oracle_wigner(const DensityMatrix& rho, Complex alpha);
double oracle_q(const DensityMatrix& rho, Complex alpha);
Complex oracle_char(const DensityMatrix& rho, Complex gamma, KappaOrder kappa);
double oracle_pnd(const DensityMatrix& rho, int n);
double oracle_moment(const DensityMatrix& rho, int r);

/// Moment of the channel output evaluated without forming the output state:
/// Gauss-Hermite quadrature of Tr[rho (a+ + conj(z))^r (a + z)^r] over the
/// noise distribution. Exact for the polynomial integrand.
double oracle_output_moment(const DensityMatrix& rho_in, double s, int r,
                            int quad_order = 24);

/// Cutoff at which a geometric tail with the given mean stays below
/// tail_target including an n^2 readout weight; clamped to [60, 320].
int recommended_cutoff(double mean_photons, double tail_target);

}  // namespace qpd::fock

#endif  // QPD_FOCKORACLE_HPP
