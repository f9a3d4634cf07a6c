// Copyright 2026 The qcompat Authors
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


#pragma once

#include <array>
#include <numbers>

#include <Eigen/Dense>

#include "qcompat/channel.hpp"
#include "qcompat/fisher.hpp"

namespace qcompat {

enum class QuadratureRuleKind { adaptive, gauss_hermite };

/// Double-homodyne detection settings.
///
/// By default the two output modes are recombined on a balanced beam
/// splitter before detection, and the detection frame is phase-locked so
/// that the measured state is the one at `operating_phase`. With
/// `recombine = false` and `phase_locked = false` the quadratures of the two
/// interferometer arms are measured directly.
struct HomodyneConfig {
  double lo_phase_a = 0.0;
  double lo_phase_b = 0.0;
  bool recombine = true;
  bool phase_locked = true;
  double operating_phase = std::numbers::pi / 2.0;

  QuadratureRuleKind rule = QuadratureRuleKind::adaptive;
  /// Nodes per axis for the Gauss-Hermite rule (checked against 2x nodes).
  int quad_nodes = 96;
  /// Points with p < quad_floor * max(p) are skipped.
  double quad_floor = 1e-14;
  /// Target relative accuracy for the adaptive rule.
  double rel_tol = 1e-9;

  void validate() const;
};

/// psi_0(x), ..., psi_mmax(x): normalized Hermite functions.
Eigen::VectorXd hermite_functions(int mmax, double x);

/// e^{-i m lo_phase} psi_m(x).
cplx quadrature_amplitude(int m, double x, double lo_phase);

/// State and derivatives in the frame seen by the detectors.
struct DetectedModel {
  Eigen::MatrixXcd rho;
  std::array<Eigen::MatrixXcd, 2> d_rho;
};

DetectedModel detected_model(const ProbeOutput& output, const HomodyneConfig& config);

/// Joint density of the two quadrature outcomes.
double joint_pdf(const ProbeOutput& output, double x_a, double x_b, const HomodyneConfig& config);

struct ClassicalFimResult {
  FisherMatrix fim;
  /// Integral of p over the integration domain; should be 1.
  double normalization = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
};

/// Classical Fisher information of the double-homodyne outcome distribution.
/// Throws ConvergenceError (with the two competing estimates of the
/// phase-phase entry) when the integration does not converge.
ClassicalFimResult classical_fim_detailed(const ProbeOutput& output, const HomodyneConfig& config);
FisherMatrix classical_fim(const ProbeOutput& output, const HomodyneConfig& config = {});

/// Tr(W F_C^{-1}).
double classical_bound(const FisherMatrix& fim, const WeightMatrix& w);

}  // namespace qcompat
