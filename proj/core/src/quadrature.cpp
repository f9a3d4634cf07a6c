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


#include "qcompat/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <queue>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qcompat/errors.hpp"

namespace qcompat {

namespace {

struct Piece {
  double a;
  double b;
  Eigen::VectorXd kronrod;
  Eigen::VectorXd gauss;
  double error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece evaluate_piece(const VectorIntegrand& f, Eigen::Index dim, double a, double b) {
  using kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  using gauss = boost::math::quadrature::gauss<double, 7>;
  const auto& x = kronrod::abscissa();
  const auto& wk = kronrod::weights();
  const auto& wg = gauss::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  Piece p{a, b, Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Zero(dim), 0.0};
  // Kronrod abscissae are listed from 0 outwards; the even slots coincide
  // with the 7-point Gauss nodes.
  for (std::size_t i = 0; i < x.size(); ++i) {
    const bool on_gauss = i % 2 == 0;
    auto accumulate = [&](const Eigen::VectorXd& v) {
      p.kronrod += wk[i] * v;
      if (on_gauss) p.gauss += wg[i / 2] * v;
    };
    if (i == 0) {
      accumulate(f(mid));
    } else {
      accumulate(f(mid - half * x[i]));
      accumulate(f(mid + half * x[i]));
    }
  }
  p.kronrod *= half;
  p.gauss *= half;
  p.error = (p.kronrod - p.gauss).cwiseAbs().maxCoeff();
  return p;
}

}  // namespace

AdaptiveResult integrate_adaptive(const VectorIntegrand& f, Eigen::Index dim, double a, double b,
                                  const AdaptiveOptions& options) {
  if (!(b > a)) throw ParameterError("integrate_adaptive: empty interval");
  std::priority_queue<Piece> queue;
  const int pieces = std::max(1, options.initial_pieces);
  const double h = (b - a) / pieces;
  for (int i = 0; i < pieces; ++i) {
    const double lo = a + i * h;
    const double hi = i + 1 == pieces ? b : lo + h;
    queue.push(evaluate_piece(f, dim, lo, hi));
  }

  auto totals = [&](AdaptiveResult& r) {
    r.value = Eigen::VectorXd::Zero(dim);
    r.coarse = Eigen::VectorXd::Zero(dim);
    r.error = 0.0;
    auto copy = queue;
    while (!copy.empty()) {
      r.value += copy.top().kronrod;
      r.coarse += copy.top().gauss;
      r.error += copy.top().error;
      copy.pop();
    }
    r.intervals = static_cast<int>(queue.size());
  };

  AdaptiveResult result;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(dim);
  double err = 0.0;
  {
    auto copy = queue;
    while (!copy.empty()) {
      sum += copy.top().kronrod;
      err += copy.top().error;
      copy.pop();
    }
  }
  while (true) {
    const double target =
        std::max(options.abs_tol, options.rel_tol * sum.cwiseAbs().maxCoeff());
    if (err <= target) {
      totals(result);
      result.converged = true;
      return result;
    }
    if (static_cast<int>(queue.size()) >= options.max_intervals) break;
    Piece worst = queue.top();
    queue.pop();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b)) {
      queue.push(std::move(worst));
      break;
    }
    Piece left = evaluate_piece(f, dim, worst.a, m);
    Piece right = evaluate_piece(f, dim, m, worst.b);
    sum += left.kronrod + right.kronrod - worst.kronrod;
    err += left.error + right.error - worst.error;
    queue.push(std::move(left));
    queue.push(std::move(right));
  }
  totals(result);
  result.converged = false;
  return result;
}

QuadratureRule gauss_hermite_rule(int n) {
  if (n < 1) throw ParameterError("gauss_hermite_rule: need at least one node");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) sub(k - 1) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const double mass = std::sqrt(std::numbers::pi);
  for (int i = 0; i < n; ++i) {
    const double v = eig.eigenvectors()(0, i);
    rule.nodes[static_cast<std::size_t>(i)] = eig.eigenvalues()(i);
    rule.weights[static_cast<std::size_t>(i)] = mass * v * v;
  }
  return rule;
}

}  // namespace qcompat
