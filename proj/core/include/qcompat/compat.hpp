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

#include <string>
#include <vector>

#include "qcompat/channel.hpp"
#include "qcompat/fisher.hpp"
#include "qcompat/holevo.hpp"
#include "qcompat/homodyne.hpp"
#include "qcompat/quantum_bounds.hpp"

namespace qcompat {

struct EvaluationConfig {
  HomodyneConfig homodyne;
  HolevoOptions holevo;
  double sld_tol = 1e-10;
};

struct CompatPoint {
  Scenario scenario;
  ProbeLabel label;
  ParamPoint params;
  double y = 0.5;
  double c_c = 0.0;
  double c_q = 0.0;
  double c_h = 0.0;
  double r_ch = 0.0;
  double r_bg = 0.0;
  double commutation = 0.0;
  HolevoSolution holevo;
  /// Short tokens such as "eta_boundary" or "r_ch_clamped".
  std::vector<std::string> flags;

  std::string flag_string() const;
};

/// Per-probe quantities that do not depend on the weight.
struct ProbeEvaluation {
  Scenario scenario;
  ProbeOutput output;
  ClassicalFimResult classical;
  FisherMatrix f_q;
  double commutation = 0.0;
  std::vector<std::string> flags;
};

/// Channel, homodyne FIM, SLDs and QFIM for one probe. Errors are rethrown
/// with their stage set ("channel", "homodyne", "sld").
ProbeEvaluation prepare_probe(const Scenario& scenario, const ProbeLabel& label,
                              const ParamPoint& params, const EvaluationConfig& config = {});

/// Bounds and ratios at weight y. Stages: "classical_bound", "qcrb", "hcrb".
CompatPoint evaluate_weight(const ProbeEvaluation& probe, double y,
                            const EvaluationConfig& config = {});

CompatPoint evaluate_point(const Scenario& scenario, const ProbeLabel& label,
                           const ParamPoint& params, double y,
                           const EvaluationConfig& config = {});

/// Diagonal-information approximation of C_C / C_H, valid when C_H ~ C_Q.
/// Throws ApplicabilityError when either matrix has off-diagonal entries
/// above 1e-6 relative to its diagonal.
double approx_r_ch(const FisherMatrix& f_c, const FisherMatrix& f_q, double y);

}  // namespace qcompat
