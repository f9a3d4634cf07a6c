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
#include <string>

#include <Eigen/Dense>

#include "qcompat/channel.hpp"
#include "qcompat/fisher.hpp"

namespace qcompat {

/// A probe model restricted to the support of rho plus the directions the
/// derivatives reach outside it. `isometry` maps the reduced space into the
/// full Fock space.
struct ProjectedModel {
  Eigen::MatrixXcd isometry;
  Eigen::MatrixXcd rho;
  std::array<Eigen::MatrixXcd, 2> d_rho;
  int support_rank = 0;
  int retained_dim = 0;
};

/// `tol` is relative to the largest eigenvalue of rho.
ProjectedModel support_project(const ProbeOutput& output, double tol = 1e-12);

enum class SolverStatus { optimal, inaccurate };

std::string_view solver_status_name(SolverStatus s) noexcept;

struct HolevoOptions {
  double support_tol = 1e-12;
  /// Smallest singular value of the stacked derivatives below which the
  /// model is rejected as degenerate.
  double degenerate_tol = 1e-10;
  /// Primal/dual agreement required for an `optimal` status.
  double gap_tol = 1e-8;
  double feasibility_tol = 1e-8;
};

struct HolevoSolution {
  double value = 0.0;
  std::array<Eigen::MatrixXcd, 2> X;
  Eigen::Matrix2d V = Eigen::Matrix2d::Zero();
  SolverStatus status = SolverStatus::optimal;
  double reform_value = 0.0;
  double gap = 0.0;
  /// Lagrangian lower bound at the optimal multiplier.
  double dual_value = 0.0;
  /// Optimal multiplier of the imaginary part, normalized to [-1, 1].
  double multiplier = 0.0;
  int retained_dim = 0;
  double unbiasedness_residual = 0.0;
  std::string solver;
  double tolerance = 0.0;
};

/// Holevo bound for the weighted two-parameter problem
///
///   min Tr(W V)  s.t.  V >= Z(X),  Tr(d_i rho X_j) = delta_ij,
///
/// with Z(X)_ij = Tr(rho X_i X_j). Solved through its Lagrangian dual,
/// which reduces to a concave one-dimensional maximization over the
/// multiplier of Im Z. Each dual evaluation is a block-diagonal equality
/// constrained quadratic program in the eigenbasis of rho. The primal
/// optimum is recovered from the maximizing multiplier and certified
/// against the dual bound.
///
/// Throws DegenerateModelError when the derivatives are linearly dependent
/// or the unbiasedness constraints cannot be met.
HolevoSolution hcrb(const ProbeOutput& output, const WeightMatrix& w,
                    const HolevoOptions& options = {});

/// Z(X) for the full model.
Eigen::Matrix2cd z_matrix(const Eigen::MatrixXcd& rho, const std::array<Eigen::MatrixXcd, 2>& X);

/// Tr(W Re Z(X)) + || sqrt(W) Im Z(X) sqrt(W) ||_1. Throws ContractError when X
/// violates local unbiasedness by more than `unbiasedness_tol`.
double reform_objective(const ProbeOutput& output, const WeightMatrix& w,
                        const std::array<Eigen::MatrixXcd, 2>& X,
                        double unbiasedness_tol = 1e-6);

/// max_ij |Tr(d_i rho X_j) - delta_ij|.
double unbiasedness_residual(const std::array<Eigen::MatrixXcd, 2>& d_rho,
                             const std::array<Eigen::MatrixXcd, 2>& X);

}  // namespace qcompat
