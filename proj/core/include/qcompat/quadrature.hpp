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

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace qcompat {

/// Vector-valued integrand on the real line.
using VectorIntegrand = std::function<Eigen::VectorXd(double)>;

struct AdaptiveOptions {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  int initial_pieces = 16;
  int max_intervals = 4000;
};

struct AdaptiveResult {
  Eigen::VectorXd value;
  /// Value of the embedded 7-point Gauss rule on the final partition.
  Eigen::VectorXd coarse;
  double error = 0.0;
  int intervals = 0;
  bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration of a vector-valued
/// function over [a, b]. The interval with the largest max-norm error is
/// bisected until the summed error falls below max(abs_tol, rel_tol * |I|_inf).
AdaptiveResult integrate_adaptive(const VectorIntegrand& f, Eigen::Index dim, double a, double b,
                                  const AdaptiveOptions& options = {});

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Hermite rule for the weight e^{-x^2} (Golub-Welsch).
QuadratureRule gauss_hermite_rule(int n);

}  // namespace qcompat
