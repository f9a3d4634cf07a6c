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


#include "qcompat/channel.hpp"

#include <cmath>

#include <boost/math/special_functions/binomial.hpp>
#include <fmt/format.h>

#include "qcompat/errors.hpp"

namespace qcompat {

namespace {

double binomial(int n, int k) {
  return boost::math::binomial_coefficient<double>(static_cast<unsigned>(n),
                                                   static_cast<unsigned>(k));
}

void check_indices(int N, int p, int k, int l) {
  if (N < 1 || p < 0 || p > N || k < 0 || k > p || l < 0 || l > N - p) {
    throw ParameterError(fmt::format("loss index out of range: N={} p={} k={} l={}", N, p, k, l));
  }
}

// eta^alpha (1 - eta)^k with 0^0 = 1, and its derivative in eta. Terms with a
// zero prefactor are dropped so that the boundary values stay finite.
struct PowerTerm {
  double value;
  double derivative;
};

PowerTerm power_term(double eta, double alpha, int k) {
  const double s = 1.0 - eta;
  PowerTerm t{std::pow(eta, alpha) * std::pow(s, k), 0.0};
  if (alpha != 0.0) t.derivative += alpha * std::pow(eta, alpha - 1.0) * std::pow(s, k);
  if (k != 0) t.derivative -= k * std::pow(eta, alpha) * std::pow(s, k - 1);
  return t;
}

}  // namespace

std::string_view param_name(Param p) noexcept {
  switch (p) {
    case Param::phi: return "phi";
    case Param::eta_a: return "eta_a";
    case Param::eta_b: return "eta_b";
    case Param::delta: return "delta";
  }
  return "?";
}

double ParamPoint::get(Param p) const noexcept {
  switch (p) {
    case Param::phi: return phi;
    case Param::eta_a: return eta_a;
    case Param::eta_b: return eta_b;
    case Param::delta: return delta;
  }
  return 0.0;
}

void ParamPoint::set(Param p, double value) noexcept {
  switch (p) {
    case Param::phi: phi = value; break;
    case Param::eta_a: eta_a = value; break;
    case Param::eta_b: eta_b = value; break;
    case Param::delta: delta = value; break;
  }
}

void ParamPoint::validate() const {
  if (!std::isfinite(phi)) throw ParameterError("phi must be finite");
  if (!(eta_a >= 0.0 && eta_a <= 1.0)) {
    throw ParameterError(fmt::format("eta_a={} outside [0, 1]", eta_a));
  }
  if (!(eta_b >= 0.0 && eta_b <= 1.0)) {
    throw ParameterError(fmt::format("eta_b={} outside [0, 1]", eta_b));
  }
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw ParameterError(fmt::format("delta={} must be finite and >= 0", delta));
  }
}

std::string_view scenario_name(ScenarioKind kind) noexcept {
  switch (kind) {
    case ScenarioKind::phase_loss_one_arm: return "phase_loss_one_arm";
    case ScenarioKind::phase_loss_ref_arm_known: return "phase_loss_ref_arm_known";
    case ScenarioKind::phase_dephasing: return "phase_dephasing";
  }
  return "?";
}

ScenarioKind parse_scenario(std::string_view name) {
  for (auto k : {ScenarioKind::phase_loss_one_arm, ScenarioKind::phase_loss_ref_arm_known,
                 ScenarioKind::phase_dephasing}) {
    if (scenario_name(k) == name) return k;
  }
  throw ParameterError(fmt::format("unknown scenario '{}'", name));
}

Scenario Scenario::one_arm() { return {ScenarioKind::phase_loss_one_arm, {Param::phi, Param::eta_a}}; }
Scenario Scenario::ref_arm_known() {
  return {ScenarioKind::phase_loss_ref_arm_known, {Param::phi, Param::eta_a}};
}
Scenario Scenario::dephasing() { return {ScenarioKind::phase_dephasing, {Param::phi, Param::delta}}; }

Scenario Scenario::of(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::phase_loss_one_arm: return one_arm();
    case ScenarioKind::phase_loss_ref_arm_known: return ref_arm_known();
    case ScenarioKind::phase_dephasing: return dephasing();
  }
  return one_arm();
}

void Scenario::check(const ParamPoint& point) const {
  point.validate();
  switch (kind) {
    case ScenarioKind::phase_loss_one_arm:
      if (point.eta_b != 1.0 || point.delta != 0.0) {
        throw ParameterError("phase_loss_one_arm requires eta_b = 1 and delta = 0");
      }
      break;
    case ScenarioKind::phase_loss_ref_arm_known:
      if (point.delta != 0.0) throw ParameterError("phase_loss_ref_arm_known requires delta = 0");
      break;
    case ScenarioKind::phase_dephasing:
      if (point.eta_a != point.eta_b) {
        throw ParameterError("phase_dephasing requires eta_a = eta_b");
      }
      break;
  }
}

double loss_amplitude(int N, int p, int k, int l, double eta_a, double eta_b) {
  check_indices(N, p, k, l);
  return binomial(p, k) * binomial(N - p, l) * std::pow(eta_a, p - k) * std::pow(1.0 - eta_a, k) *
         std::pow(eta_b, N - p - l) * std::pow(1.0 - eta_b, l);
}

cplx output_coefficient(int N, int n, int p, int q, int k, int l, const ParamPoint& point) {
  check_indices(N, p, k, l);
  check_indices(N, q, k, l);
  const double a = kravchuk_coefficient(N, n, p) * kravchuk_coefficient(N, n, q);
  const double dpq = p - q;
  const double loss = std::sqrt(loss_amplitude(N, p, k, l, point.eta_a, point.eta_b) *
                                loss_amplitude(N, q, k, l, point.eta_a, point.eta_b));
  return a * loss * std::exp(cplx(-0.5 * point.delta * point.delta * dpq * dpq, -dpq * point.phi));
}

ProbeOutput output_state(const ProbeLabel& label, const ParamPoint& point,
                         std::array<Param, 2> estimated) {
  point.validate();
  const int N = label.N;
  auto basis = build_basis(N);
  if (label.n < 0 || label.n > N) {
    throw ParameterError(fmt::format("gHB index n={} outside [0, {}]", label.n, N));
  }
  if (estimated[0] == estimated[1]) throw ParameterError("estimated parameters must differ");

  ProbeOutput out;
  out.basis = basis;
  out.estimated = estimated;
  out.point = point;
  out.label = label;
  const Eigen::Index d = basis->dimension();
  out.rho = Eigen::MatrixXcd::Zero(d, d);
  out.d_rho = {Eigen::MatrixXcd::Zero(d, d), Eigen::MatrixXcd::Zero(d, d)};
  for (Param e : estimated) {
    if (e == Param::eta_a || e == Param::eta_b) {
      const double eta = point.get(e);
      if (eta == 0.0 || eta == 1.0) out.boundary = true;
    }
  }

  Eigen::VectorXd amp(N + 1);
  for (int p = 0; p <= N; ++p) amp(p) = kravchuk_coefficient(N, label.n, p);

  const double ea = point.eta_a;
  const double eb = point.eta_b;
  const double dl = point.delta;
  for (int k = 0; k <= N; ++k) {
    for (int l = 0; l <= N - k; ++l) {
      for (int p = k; p <= N - l; ++p) {
        const Eigen::Index row = basis->index_of(p - k, N - p - l);
        for (int q = k; q <= N - l; ++q) {
          const double a = amp(p) * amp(q);
          if (a == 0.0) continue;
          const double comb = std::sqrt(binomial(p, k) * binomial(N - p, l) * binomial(q, k) *
                                        binomial(N - q, l));
          const double half = 0.5 * (p + q);
          const PowerTerm ga = power_term(ea, half - k, k);
          const PowerTerm gb = power_term(eb, N - half - l, l);
          const double mag = a * comb * ga.value * gb.value;
          const double dpq = p - q;
          const cplx phase =
              std::exp(cplx(-0.5 * dl * dl * dpq * dpq, -dpq * point.phi));
          const Eigen::Index col = basis->index_of(q - k, N - q - l);
          out.rho(row, col) += mag * phase;
          for (int i = 0; i < 2; ++i) {
            cplx dc;
            switch (estimated[i]) {
              case Param::phi: dc = cplx(0.0, -dpq) * mag * phase; break;
              case Param::delta: dc = -dl * dpq * dpq * mag * phase; break;
              case Param::eta_a: dc = a * comb * ga.derivative * gb.value * phase; break;
              case Param::eta_b: dc = a * comb * ga.value * gb.derivative * phase; break;
            }
            out.d_rho[static_cast<std::size_t>(i)](row, col) += dc;
          }
        }
      }
    }
  }
  for (const auto& m : out.d_rho) {
    if (!m.allFinite()) {
      throw ParameterError(
          "derivative is not finite at this transmissivity; a loss parameter at 0 cannot be "
          "estimated");
    }
  }
  return out;
}

ProbeOutput output_state(const Scenario& scenario, const ProbeLabel& label,
                         const ParamPoint& point) {
  scenario.check(point);
  return output_state(label, point, scenario.estimated);
}

SectorDecomposition sector_decompose(const ProbeOutput& output, double rank_tol) {
  const TwoModeBasis& basis = *output.basis;
  const int N = basis.total_photons();
  SectorDecomposition dec;
  for (int t = N; t >= 0; --t) {
    const Eigen::Index b = basis.sector_begin(t);
    const Eigen::Index s = basis.sector_size(t);
    Eigen::MatrixXcd block = output.rho.block(b, b, s, s);
    const double weight = block.trace().real();
    if (weight <= 1e-14) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(block, Eigen::EigenvaluesOnly);
    const double top = eig.eigenvalues().maxCoeff();
    const int rank = static_cast<int>((eig.eigenvalues().array() > rank_tol * top).count());
    dec.blocks.push_back({t, std::move(block), weight, rank, rank == 1});
  }
  for (Eigen::Index i = 0; i < output.rho.rows(); ++i) {
    for (Eigen::Index j = 0; j < output.rho.cols(); ++j) {
      if (basis.state(i).total() != basis.state(j).total()) {
        dec.max_cross_sector = std::max(dec.max_cross_sector, std::abs(output.rho(i, j)));
      }
    }
  }
  return dec;
}

}  // namespace qcompat
