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
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qcompat/fock_basis.hpp"
#include "qcompat/probe.hpp"

namespace qcompat {

enum class Param { phi, eta_a, eta_b, delta };

std::string_view param_name(Param p) noexcept;

struct ParamPoint {
  double phi = std::numbers::pi / 4.0;
  double eta_a = 1.0;
  double eta_b = 1.0;
  double delta = 0.0;

  double get(Param p) const noexcept;
  void set(Param p, double value) noexcept;
  /// Throws ParameterError unless the etas lie in [0, 1] and delta >= 0.
  void validate() const;
};

enum class ScenarioKind { phase_loss_one_arm, phase_loss_ref_arm_known, phase_dephasing };

std::string_view scenario_name(ScenarioKind kind) noexcept;
/// Throws ParameterError for unknown names.
ScenarioKind parse_scenario(std::string_view name);

/// Which pair of parameters is estimated, and which are held fixed.
struct Scenario {
  ScenarioKind kind = ScenarioKind::phase_loss_one_arm;
  std::array<Param, 2> estimated{Param::phi, Param::eta_a};

  static Scenario one_arm();
  static Scenario ref_arm_known();
  static Scenario dephasing();
  static Scenario of(ScenarioKind kind);

  std::string_view name() const noexcept { return scenario_name(kind); }

  /// Throws ParameterError when `point` violates the scenario's fixed values:
  /// one-arm loss needs eta_b = 1 and delta = 0, known-reference loss needs
  /// delta = 0, dephasing needs eta_a = eta_b.
  void check(const ParamPoint& point) const;
};

/// Output probe: rho and its derivatives with respect to the estimated pair.
struct ProbeOutput {
  std::shared_ptr<const TwoModeBasis> basis;
  Eigen::MatrixXcd rho;
  std::array<Eigen::MatrixXcd, 2> d_rho;
  std::array<Param, 2> estimated{Param::phi, Param::eta_a};
  ParamPoint point;
  ProbeLabel label;
  /// Set when an estimated transmissivity sits at 0 or 1, where the loss
  /// information degenerates.
  bool boundary = false;
};

/// B^p_{kl}: probability that k of the p photons in arm a and l of the N-p
/// photons in arm b are lost.
double loss_amplitude(int N, int p, int k, int l, double eta_a, double eta_b);

/// Coefficient of |p-k, N-p-l><q-k, N-q-l| in the output state.
cplx output_coefficient(int N, int n, int p, int q, int k, int l, const ParamPoint& point);

/// Output state and analytic derivatives for an arbitrary estimated pair.
ProbeOutput output_state(const ProbeLabel& label, const ParamPoint& point,
                         std::array<Param, 2> estimated);

/// Output state for a scenario; validates the point against the scenario.
ProbeOutput output_state(const Scenario& scenario, const ProbeLabel& label,
                         const ParamPoint& point);

struct SectorBlock {
  int total = 0;
  Eigen::MatrixXcd block;
  double weight = 0.0;
  int rank = 0;
  bool pure = false;
};

struct SectorDecomposition {
  /// Ordered by photon total, descending. Blocks with weight below 1e-14 are
  /// omitted.
  std::vector<SectorBlock> blocks;
  double max_cross_sector = 0.0;
};

SectorDecomposition sector_decompose(const ProbeOutput& output, double rank_tol = 1e-10);

}  // namespace qcompat
