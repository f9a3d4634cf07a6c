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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qcompat/errors.hpp"
#include "qcompat/holevo.hpp"
#include "qcompat/quantum_bounds.hpp"

namespace qcompat {
namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

TEST(Sld, ReconstructsDerivatives) {
  const std::vector<std::pair<Scenario, ParamPoint>> cases{
      {Scenario::one_arm(), {0.3, 0.5, 1.0, 0.0}},
      {Scenario::ref_arm_known(), {0.9, 0.6, 0.8, 0.0}},
      {Scenario::dephasing(), {1.4, 0.9, 0.9, 0.3}},
      {Scenario::one_arm(), {0.3, 0.999, 1.0, 0.0}}};
  for (const auto& [scenario, point] : cases) {
    const ProbeOutput out = output_state(scenario, {4, 1}, point);
    const SldPair s = sld(out);
    for (int i = 0; i < 2; ++i) {
      const Eigen::MatrixXcd rec = 0.5 * (s.L[i] * out.rho + out.rho * s.L[i]);
      EXPECT_LT(max_abs(rec - out.d_rho[i]), 1e-8) << scenario.name();
      EXPECT_LT(std::abs((out.rho * s.L[i]).trace()), 1e-8);
      EXPECT_LT(max_abs(s.L[i] - s.L[i].adjoint()), 1e-12);
    }
  }
}

TEST(Sld, PureStatePhaseGenerator) {
  const ProbeOutput out =
      output_state(Scenario::one_arm(), {2, 1}, ParamPoint{0.7, 1.0, 1.0, 0.0});
  const SldPair s = sld(out);
  EXPECT_EQ(s.support_rank, 1);
  EXPECT_LT(max_abs(s.L[0] - 2.0 * out.d_rho[0]), 1e-10);
}

TEST(Qfim, LosslessPhaseInformation) {
  const ProbeOutput hb =
      output_state(Scenario::one_arm(), {2, 1}, ParamPoint{0.7, 1.0, 1.0, 0.0});
  EXPECT_NEAR(qfim(hb).entries(0, 0), 4.0, 1e-10);
  for (int N = 1; N <= 6; ++N) {
    const ProbeOutput out =
        output_state(Scenario::one_arm(), {N, 0}, ParamPoint{0.2, 1.0, 1.0, 0.0});
    EXPECT_NEAR(qfim(out).entries(0, 0), static_cast<double>(N), 1e-8);
    EXPECT_NEAR(oracle::pure_phase_qfi(N, 0), static_cast<double>(N), 1e-10);
    for (int n = 0; n <= N; ++n) {
      const ProbeOutput o = output_state({N, n}, ParamPoint{0.2, 1.0, 1.0, 0.0},
                                         {Param::phi, Param::eta_a});
      EXPECT_NEAR(qfim(o).entries(0, 0), oracle::pure_phase_qfi(N, n), 1e-8);
    }
  }
}

TEST(Qfim, LossInformationExceedsPhaseAtHalfTransmission) {
  const ProbeOutput out =
      output_state(Scenario::one_arm(), {2, 1}, ParamPoint{0.3, 0.5, 1.0, 0.0});
  const FisherMatrix f = qfim(out);
  EXPECT_GT(f.entries(1, 1), f.entries(0, 0));
  EXPECT_NEAR(f.entries(0, 0), 1.6, 1e-10);
  EXPECT_NEAR(f.entries(1, 1), 4.0, 1e-10);
}

TEST(Qfim, SectorAdditivity) {
  for (ProbeLabel label : {ProbeLabel{2, 1}, ProbeLabel{3, 0}, ProbeLabel{4, 2}, ProbeLabel{6, 3},
                           ProbeLabel{5, 1}}) {
    for (double eta : {0.2, 0.5, 0.85}) {
      const ProbeOutput out =
          output_state(Scenario::one_arm(), label, ParamPoint{0.6, eta, 1.0, 0.0});
      const Eigen::Matrix2d direct = qfim(out).entries;
      const Eigen::Matrix2d sum = oracle::sector_additive_qfim(label, 0.6, eta);
      EXPECT_LT((direct - sum).cwiseAbs().maxCoeff(), 1e-7 * direct.cwiseAbs().maxCoeff())
          << "N=" << label.N << " n=" << label.n << " eta=" << eta;
    }
  }
}

TEST(Qcrb, Arithmetic) {
  FisherMatrix f;
  f.kind = FisherKind::quantum;
  f.entries << 4.0, 0.0, 0.0, 2.0;
  EXPECT_NEAR(qcrb(f, WeightMatrix{}), 0.75, 1e-15);
}

TEST(Qcrb, UnidentifiableDephasingIsSingular) {
  const ProbeOutput out =
      output_state(Scenario::dephasing(), {2, 1}, ParamPoint{0.4, 0.9, 0.9, 0.0});
  try {
    qcrb(qfim(out), weight_matrix(0.5));
    FAIL() << "expected SingularityError";
  } catch (const SingularityError& e) {
    EXPECT_EQ(e.parameter(), "delta");
  }
}

TEST(Commutation, DephasingIsWeaklyCompatible) {
  for (ProbeLabel label : {ProbeLabel{2, 1}, ProbeLabel{4, 2}, ProbeLabel{3, 0}}) {
    for (double delta : {0.1, 0.5}) {
      const ProbeOutput out =
          output_state(Scenario::dephasing(), label, ParamPoint{0.4, 0.999, 0.999, delta});
      EXPECT_LT(commutation_check(out), 1e-8);
    }
  }
}

TEST(Commutation, OneArmLossIsIncompatible) {
  const ProbeOutput out =
      output_state(Scenario::one_arm(), {2, 1}, ParamPoint{0.4, 0.5, 1.0, 0.0});
  EXPECT_GT(commutation_check(out), 1e-6);
}

TEST(Commutation, VanishingImpliesBoundCollapse) {
  const ProbeOutput out =
      output_state(Scenario::dephasing(), {4, 2}, ParamPoint{0.4, 0.95, 0.95, 0.3});
  ASSERT_LT(commutation_check(out), 1e-8);
  const FisherMatrix f = qfim(out);
  for (double y : {0.2, 0.5, 0.8}) {
    const WeightMatrix w = weight_matrix(y);
    const double cq = qcrb(f, w);
    EXPECT_NEAR(hcrb(out, w).value, cq, 1e-6 * cq);
  }
}

}  // namespace
}  // namespace qcompat
