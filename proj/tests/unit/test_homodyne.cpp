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


#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qcompat/errors.hpp"
#include "qcompat/homodyne.hpp"
#include "qcompat/quantum_bounds.hpp"

namespace qcompat {
namespace {

HomodyneConfig direct_detection() {
  HomodyneConfig c;
  c.recombine = false;
  c.phase_locked = false;
  return c;
}

TEST(HermiteFunctions, GroundStateAndParity) {
  EXPECT_NEAR(quadrature_amplitude(0, 0.0, 0.0).real(), std::pow(std::numbers::pi, -0.25), 1e-15);
  EXPECT_NEAR(std::abs(quadrature_amplitude(1, 0.0, 0.7)), 0.0, 1e-15);
  const cplx q = quadrature_amplitude(2, 0.4, 0.3);
  EXPECT_NEAR(std::arg(q * std::polar(1.0, 0.6)), std::arg(cplx(hermite_functions(2, 0.4)(2))),
              1e-12);
}

TEST(HermiteFunctions, OrthonormalUnderGaussHermite) {
  Eigen::VectorXd x, w;
  oracle::gauss_hermite(40, x, w);
  const int mmax = 12;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(mmax + 1, mmax + 1);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const Eigen::VectorXd psi = hermite_functions(mmax, x(i));
    gram += w(i) * std::exp(x(i) * x(i)) * psi * psi.transpose();
  }
  EXPECT_LT((gram - Eigen::MatrixXd::Identity(mmax + 1, mmax + 1)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(JointPdf, Vacuum) {
  ProbeOutput out;
  out.basis = build_basis(1);
  out.rho = Eigen::MatrixXcd::Zero(3, 3);
  out.rho(0, 0) = 1.0;
  out.d_rho = {Eigen::MatrixXcd::Zero(3, 3), Eigen::MatrixXcd::Zero(3, 3)};
  for (const HomodyneConfig& c : {HomodyneConfig{}, direct_detection()}) {
    EXPECT_NEAR(joint_pdf(out, 0.0, 0.0, c), 1.0 / std::numbers::pi, 1e-14);
    EXPECT_NEAR(joint_pdf(out, 0.5, -1.0, c), std::exp(-1.25) / std::numbers::pi, 1e-14);
  }
}

TEST(JointPdf, SwapSymmetricForSinglePhoton) {
  const ProbeOutput out = output_state({1, 0}, ParamPoint{0.0, 1.0, 1.0, 0.0},
                                       {Param::phi, Param::eta_a});
  for (double xa : {-1.3, 0.2, 0.9}) {
    for (double xb : {-0.4, 0.7, 2.0}) {
      EXPECT_NEAR(joint_pdf(out, xa, xb, direct_detection()),
                  joint_pdf(out, xb, xa, direct_detection()), 1e-14);
    }
  }
}

TEST(ClassicalFim, NormalizedAndBelowQuantum) {
  const std::vector<std::pair<Scenario, ParamPoint>> cases{
      {Scenario::one_arm(), {0.3, 0.5, 1.0, 0.0}},
      {Scenario::ref_arm_known(), {0.9, 0.6, 0.8, 0.0}},
      {Scenario::dephasing(), {1.4, 0.9, 0.9, 0.3}}};
  for (const auto& [scenario, point] : cases) {
    for (ProbeLabel label : {ProbeLabel{2, 1}, ProbeLabel{3, 0}, ProbeLabel{4, 2}}) {
      const ProbeOutput out = output_state(scenario, label, point);
      for (const HomodyneConfig& c : {HomodyneConfig{}, direct_detection()}) {
        const ClassicalFimResult r = classical_fim_detailed(out, c);
        EXPECT_NEAR(r.normalization, 1.0, 1e-8);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> fc(r.fim.entries);
        EXPECT_GT(fc.eigenvalues().minCoeff(), -1e-10);
        const Eigen::Matrix2d gap = qfim(out).entries - r.fim.entries;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> g(gap);
        EXPECT_GT(g.eigenvalues().minCoeff(), -1e-7) << scenario.name() << " N=" << label.N;
      }
    }
  }
}

TEST(ClassicalFim, PhaseInvariantWhenLocked) {
  const ProbeOutput a =
      output_state(Scenario::one_arm(), {4, 2}, ParamPoint{0.2, 0.5, 1.0, 0.0});
  const ProbeOutput b =
      output_state(Scenario::one_arm(), {4, 2}, ParamPoint{0.9, 0.5, 1.0, 0.0});
  const Eigen::Matrix2d fa = classical_fim(a).entries;
  const Eigen::Matrix2d fb = classical_fim(b).entries;
  EXPECT_LT((fa - fb).cwiseAbs().maxCoeff() / fa.cwiseAbs().maxCoeff(), 1e-5);
}

TEST(ClassicalFim, GaussHermiteAgreesWithAdaptive) {
  const ProbeOutput out =
      output_state(Scenario::one_arm(), {2, 1}, ParamPoint{0.4, 0.5, 1.0, 0.0});
  HomodyneConfig gh;
  gh.rule = QuadratureRuleKind::gauss_hermite;
  gh.quad_nodes = 192;
  const Eigen::Matrix2d a = classical_fim(out).entries;
  const Eigen::Matrix2d g = classical_fim(out, gh).entries;
  EXPECT_LT((a - g).cwiseAbs().maxCoeff() / a.cwiseAbs().maxCoeff(), 1e-5);
}

// Near-pure outputs have exact zeros in p that a fixed Gauss-Hermite grid
// cannot resolve; the node-doubling check must report it.
TEST(ClassicalFim, GaussHermiteReportsNonConvergence) {
  const ProbeOutput out =
      output_state(Scenario::ref_arm_known(), {4, 2}, ParamPoint{0.4, 0.999, 0.999, 0.0});
  HomodyneConfig gh;
  gh.rule = QuadratureRuleKind::gauss_hermite;
  try {
    classical_fim(out, gh);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_NE(e.coarse_estimate(), e.fine_estimate());
  }
}

TEST(ClassicalFim, RejectsBadConfig) {
  HomodyneConfig c;
  c.quad_floor = 0.0;
  const ProbeOutput out =
      output_state(Scenario::one_arm(), {2, 1}, ParamPoint{0.4, 0.5, 1.0, 0.0});
  EXPECT_THROW(classical_fim(out, c), ParameterError);
}

TEST(ClassicalBound, DiagonalArithmetic) {
  FisherMatrix f;
  f.entries << 4.0, 0.0, 0.0, 2.0;
  EXPECT_NEAR(classical_bound(f, WeightMatrix{}), 0.75, 1e-15);
  EXPECT_NEAR(classical_bound(f, weight_matrix(1.0)), 2.0 / 4.0, 1e-15);
}

// Importance-sampled estimate of E[score score^T] under p, compared against
// the deterministic integral.
TEST(ClassicalFim, MonteCarloScoreVariance) {
  const ProbeOutput out =
      output_state(Scenario::one_arm(), {2, 1}, ParamPoint{0.4, 0.5, 1.0, 0.0});
  const HomodyneConfig config;
  const DetectedModel model = detected_model(out, config);
  const TwoModeBasis& basis = *out.basis;
  const Eigen::Matrix2d reference = classical_fim(out, config).entries;

  const double sigma = 1.3;
  std::mt19937_64 gen(7);
  std::normal_distribution<double> normal(0.0, sigma);
  const int samples = 1'000'000;
  Eigen::Matrix2d sum = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d sum_sq = Eigen::Matrix2d::Zero();
  Eigen::VectorXcd q(basis.dimension());
  for (int s = 0; s < samples; ++s) {
    const double xa = normal(gen);
    const double xb = normal(gen);
    for (Eigen::Index j = 0; j < basis.dimension(); ++j) {
      q(j) = quadrature_amplitude(basis.state(j).m_a, xa, config.lo_phase_a) *
             quadrature_amplitude(basis.state(j).m_b, xb, config.lo_phase_b);
    }
    const double p = (q.transpose() * model.rho * q.conjugate())(0, 0).real();
    if (!(p > 1e-300)) continue;
    const double g = std::exp(-(xa * xa + xb * xb) / (2 * sigma * sigma)) /
                     (2 * std::numbers::pi * sigma * sigma);
    const Eigen::Vector2d dp((q.transpose() * model.d_rho[0] * q.conjugate())(0, 0).real(),
                             (q.transpose() * model.d_rho[1] * q.conjugate())(0, 0).real());
    const Eigen::Matrix2d term = dp * dp.transpose() / (p * g);
    sum += term;
    sum_sq += term.cwiseProduct(term);
  }
  const Eigen::Matrix2d mean = sum / samples;
  const Eigen::Matrix2d var = sum_sq / samples - mean.cwiseProduct(mean);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double se = std::sqrt(var(i, j) / samples);
      EXPECT_LT(std::abs(mean(i, j) - reference(i, j)), 3.0 * se + 1e-12)
          << "entry " << i << j << " mc=" << mean(i, j) << " ref=" << reference(i, j);
    }
  }
}

TEST(JointPdf, MatchesDetectedModelContraction) {
  const ProbeOutput out =
      output_state(Scenario::ref_arm_known(), {3, 1}, ParamPoint{0.4, 0.7, 0.6, 0.0});
  HomodyneConfig c;
  c.lo_phase_a = 0.3;
  c.lo_phase_b = -1.1;
  const DetectedModel m = detected_model(out, c);
  const TwoModeBasis& basis = *out.basis;
  Eigen::VectorXcd q(basis.dimension());
  const double xa = 0.8, xb = -0.35;
  for (Eigen::Index j = 0; j < basis.dimension(); ++j) {
    q(j) = quadrature_amplitude(basis.state(j).m_a, xa, c.lo_phase_a) *
           quadrature_amplitude(basis.state(j).m_b, xb, c.lo_phase_b);
  }
  EXPECT_NEAR(joint_pdf(out, xa, xb, c), (q.transpose() * m.rho * q.conjugate())(0, 0).real(),
              1e-14);
}

}  // namespace
}  // namespace qcompat
