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


#include "qcompat/compat.hpp"

#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "qcompat/errors.hpp"

namespace qcompat {

namespace {

template <typename F>
auto staged(const char* stage, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (Error& e) {
    if (e.stage().empty()) e.set_stage(stage);
    throw;
  }
}

bool off_diagonal_negligible(const Eigen::Matrix2d& m) {
  const double diag = std::sqrt(std::abs(m(0, 0) * m(1, 1)));
  return std::abs(m(0, 1)) <= 1e-6 * diag && std::abs(m(1, 0)) <= 1e-6 * diag;
}

}  // namespace

std::string CompatPoint::flag_string() const { return fmt::format("{}", fmt::join(flags, ";")); }

ProbeEvaluation prepare_probe(const Scenario& scenario, const ProbeLabel& label,
                              const ParamPoint& params, const EvaluationConfig& config) {
  ProbeEvaluation probe;
  probe.scenario = scenario;
  probe.output = staged("channel", [&] { return output_state(scenario, label, params); });
  if (probe.output.boundary) probe.flags.emplace_back("eta_boundary");
  probe.classical =
      staged("homodyne", [&] { return classical_fim_detailed(probe.output, config.homodyne); });
  if (std::abs(probe.classical.normalization - 1.0) > 1e-6) {
    probe.flags.emplace_back("pdf_normalization");
  }
  staged("sld", [&] {
    const SldPair slds = sld(probe.output, config.sld_tol);
    probe.f_q = qfim(probe.output, slds);
    probe.commutation = commutation_check(probe.output, slds);
    return 0;
  });
  return probe;
}

CompatPoint evaluate_weight(const ProbeEvaluation& probe, double y, const EvaluationConfig& config) {
  CompatPoint pt;
  pt.scenario = probe.scenario;
  pt.label = probe.output.label;
  pt.params = probe.output.point;
  pt.y = y;
  pt.commutation = probe.commutation;
  pt.flags = probe.flags;
  const WeightMatrix w = staged("weight", [&] { return weight_matrix(y); });
  pt.c_c = staged("classical_bound", [&] { return classical_bound(probe.classical.fim, w); });
  pt.c_q = staged("qcrb", [&] { return qcrb(probe.f_q, w); });
  pt.holevo = staged("hcrb", [&] { return hcrb(probe.output, w, config.holevo); });
  pt.c_h = pt.holevo.value;
  if (pt.holevo.status != SolverStatus::optimal) pt.flags.emplace_back("solver_inaccurate");

  pt.r_ch = pt.c_c / pt.c_h;
  pt.r_bg = pt.c_h / pt.c_q;
  if (pt.r_ch >= 1.0 - 1e-6 && pt.r_ch < 1.0) {
    pt.r_ch = 1.0;
    pt.flags.emplace_back("r_ch_clamped");
  } else if (pt.r_ch < 1.0) {
    pt.flags.emplace_back("r_ch_below_one");
  }
  if (pt.r_bg < 1.0 - 1e-6 || pt.r_bg > 2.0 + 1e-6) pt.flags.emplace_back("r_bg_out_of_range");
  return pt;
}

CompatPoint evaluate_point(const Scenario& scenario, const ProbeLabel& label,
                           const ParamPoint& params, double y, const EvaluationConfig& config) {
  staged("weight", [&] { return weight_matrix(y); });
  return evaluate_weight(prepare_probe(scenario, label, params, config), y, config);
}

double approx_r_ch(const FisherMatrix& f_c, const FisherMatrix& f_q, double y) {
  if (!(y >= 0.0 && y <= 1.0)) throw ParameterError(fmt::format("weight y={} outside [0, 1]", y));
  if (!off_diagonal_negligible(f_c.entries) || !off_diagonal_negligible(f_q.entries)) {
    throw ApplicabilityError(
        "diagonal approximation needs Fisher matrices with negligible off-diagonal entries");
  }
  for (const auto* m : {&f_c.entries, &f_q.entries}) {
    if (!((*m)(0, 0) > 0.0) || !((*m)(1, 1) > 0.0)) {
      throw SingularityError("diagonal Fisher information must be positive",
                             std::string(param_name((*m)(0, 0) > 0.0 ? f_c.params[1]
                                                                      : f_c.params[0])));
    }
  }
  const double num = 2.0 * y / f_c.entries(0, 0) + 2.0 * (1.0 - y) / f_c.entries(1, 1);
  const double den = 2.0 * y / f_q.entries(0, 0) + 2.0 * (1.0 - y) / f_q.entries(1, 1);
  return num / den;
}

}  // namespace qcompat
