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


#include "qcompat/homodyne.hpp"

#include <cmath>

#include <fmt/format.h>

#include "qcompat/errors.hpp"
#include "qcompat/quadrature.hpp"

namespace qcompat {

namespace {

// psi_m(x) for m <= mmax, optionally without the e^{-x^2/2} envelope.
Eigen::VectorXd hermite_table(int mmax, double x, bool envelope) {
  Eigen::VectorXd psi(mmax + 1);
  psi(0) = std::pow(std::numbers::pi, -0.25) * (envelope ? std::exp(-0.5 * x * x) : 1.0);
  if (mmax >= 1) psi(1) = std::sqrt(2.0) * x * psi(0);
  for (int m = 2; m <= mmax; ++m) {
    psi(m) = std::sqrt(2.0 / m) * x * psi(m - 1) - std::sqrt((m - 1.0) / m) * psi(m - 2);
  }
  return psi;
}

Eigen::VectorXcd mode_amplitudes(int mmax, double x, double lo_phase, bool envelope) {
  const Eigen::VectorXd psi = hermite_table(mmax, x, envelope);
  Eigen::VectorXcd q(mmax + 1);
  for (int m = 0; m <= mmax; ++m) q(m) = std::polar(psi(m), -m * lo_phase);
  return q;
}

// Contracts the mode-a index of the three detected operators at fixed x_a,
// leaving (N+1)x(N+1) matrices over the mode-b photon number.
class SliceContraction {
 public:
  SliceContraction(const TwoModeBasis& basis, const DetectedModel& model)
      : basis_(basis), model_(model), n_(basis.total_photons()) {}

  std::array<Eigen::MatrixXcd, 3> at(const Eigen::VectorXcd& qa) const {
    std::array<Eigen::MatrixXcd, 3> out;
    for (auto& m : out) m = Eigen::MatrixXcd::Zero(n_ + 1, n_ + 1);
    const Eigen::Index d = basis_.dimension();
    for (Eigen::Index j = 0; j < d; ++j) {
      const FockState& sj = basis_.state(j);
      const cplx aj = qa(sj.m_a);
      for (Eigen::Index k = 0; k < d; ++k) {
        const FockState& sk = basis_.state(k);
        const cplx w = aj * std::conj(qa(sk.m_a));
        out[0](sj.m_b, sk.m_b) += w * model_.rho(j, k);
        out[1](sj.m_b, sk.m_b) += w * model_.d_rho[0](j, k);
        out[2](sj.m_b, sk.m_b) += w * model_.d_rho[1](j, k);
      }
    }
    return out;
  }

 private:
  const TwoModeBasis& basis_;
  const DetectedModel& model_;
  int n_;
};

double contract(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& qb) {
  return (qb.transpose() * m * qb.conjugate())(0, 0).real();
}

// Accumulates [p, dp0^2/p, dp0 dp1/p, dp1^2/p] at one outcome.
Eigen::Vector4d fisher_density(const std::array<Eigen::MatrixXcd, 3>& slice,
                               const Eigen::VectorXcd& qb, double floor) {
  const double p = contract(slice[0], qb);
  Eigen::Vector4d v = Eigen::Vector4d::Zero();
  if (!(p > floor)) return v;
  const double d0 = contract(slice[1], qb);
  const double d1 = contract(slice[2], qb);
  v << p, d0 * d0 / p, d0 * d1 / p, d1 * d1 / p;
  return v;
}

double domain_half_width(int N) { return std::sqrt(2.0 * N + 1.0) + 7.0; }

double estimate_pmax(const TwoModeBasis& basis, const DetectedModel& model,
                     const HomodyneConfig& config) {
  const int N = basis.total_photons();
  const double L = domain_half_width(N);
  const int grid = 81;
  SliceContraction slices(basis, model);
  double pmax = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double xa = -L + 2.0 * L * i / (grid - 1);
    const auto s = slices.at(mode_amplitudes(N, xa, config.lo_phase_a, true));
    for (int j = 0; j < grid; ++j) {
      const double xb = -L + 2.0 * L * j / (grid - 1);
      pmax = std::max(pmax, contract(s[0], mode_amplitudes(N, xb, config.lo_phase_b, true)));
    }
  }
  return pmax;
}

FisherMatrix to_fisher(const Eigen::Vector4d& v, const ProbeOutput& output) {
  FisherMatrix f;
  f.kind = FisherKind::classical;
  f.params = output.estimated;
  f.entries << v(1), v(2), v(2), v(3);
  return f;
}

ClassicalFimResult adaptive_fim(const ProbeOutput& output, const DetectedModel& model,
                                const HomodyneConfig& config) {
  const TwoModeBasis& basis = *output.basis;
  const int N = basis.total_photons();
  const double L = domain_half_width(N);
  const double floor = config.quad_floor * estimate_pmax(basis, model, config);
  SliceContraction slices(basis, model);

  AdaptiveOptions inner_opts;
  inner_opts.rel_tol = 0.1 * config.rel_tol;
  inner_opts.abs_tol = 1e-3 * config.rel_tol * N;
  inner_opts.initial_pieces = 8;
  AdaptiveOptions outer_opts;
  outer_opts.rel_tol = config.rel_tol;
  outer_opts.initial_pieces = 16;

  int evaluations = 0;
  int inner_failures = 0;
  auto outer = [&](double xa) -> Eigen::VectorXd {
    const auto s = slices.at(mode_amplitudes(N, xa, config.lo_phase_a, true));
    auto inner = [&](double xb) -> Eigen::VectorXd {
      ++evaluations;
      return fisher_density(s, mode_amplitudes(N, xb, config.lo_phase_b, true), floor);
    };
    const AdaptiveResult r = integrate_adaptive(inner, 4, -L, L, inner_opts);
    if (!r.converged) ++inner_failures;
    return r.value;
  };
  const AdaptiveResult r = integrate_adaptive(outer, 4, -L, L, outer_opts);
  if (!r.converged || inner_failures > 0) {
    throw ConvergenceError(
        fmt::format("homodyne Fisher integral did not converge (error {:.3e}, {} unconverged "
                    "inner integrals)",
                    r.error, inner_failures),
        r.coarse(1), r.value(1));
  }
  ClassicalFimResult out;
  out.fim = to_fisher(r.value, output);
  out.normalization = r.value(0);
  out.error_estimate = r.error;
  out.evaluations = evaluations;
  return out;
}

Eigen::Vector4d hermite_grid_sum(const TwoModeBasis& basis, const DetectedModel& model,
                                 const HomodyneConfig& config, int nodes, double pmax,
                                 int& evaluations) {
  const int N = basis.total_photons();
  const QuadratureRule rule = gauss_hermite_rule(nodes);
  SliceContraction slices(basis, model);
  std::vector<Eigen::VectorXcd> qb(rule.nodes.size());
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    qb[j] = mode_amplitudes(N, rule.nodes[j], config.lo_phase_b, false);
  }
  // The e^{-x^2} weight is factored out of p and its derivatives, so the
  // Fisher integrand (dp)^2 / p carries exactly one weight factor per axis.
  Eigen::Vector4d total = Eigen::Vector4d::Zero();
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double xa = rule.nodes[i];
    const auto s = slices.at(mode_amplitudes(N, xa, config.lo_phase_a, false));
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      ++evaluations;
      const double xb = rule.nodes[j];
      const double gauss = std::exp(-xa * xa - xb * xb);
      const double p = contract(s[0], qb[j]);
      if (!(p * gauss > config.quad_floor * pmax) || !(p > 0.0)) continue;
      const double d0 = contract(s[1], qb[j]);
      const double d1 = contract(s[2], qb[j]);
      const double w = rule.weights[i] * rule.weights[j];
      total += w * Eigen::Vector4d(p, d0 * d0 / p, d0 * d1 / p, d1 * d1 / p);
    }
  }
  return total;
}

ClassicalFimResult hermite_fim(const ProbeOutput& output, const DetectedModel& model,
                               const HomodyneConfig& config) {
  const TwoModeBasis& basis = *output.basis;
  const double pmax = estimate_pmax(basis, model, config);
  int evaluations = 0;
  const Eigen::Vector4d coarse =
      hermite_grid_sum(basis, model, config, config.quad_nodes, pmax, evaluations);
  const Eigen::Vector4d fine =
      hermite_grid_sum(basis, model, config, 2 * config.quad_nodes, pmax, evaluations);
  const double scale = fine.tail<3>().cwiseAbs().maxCoeff();
  const double change = (fine - coarse).tail<3>().cwiseAbs().maxCoeff();
  if (change > 1e-5 * scale) {
    throw ConvergenceError(
        fmt::format("Gauss-Hermite Fisher integral changed by {:.3e} (relative) when doubling "
                    "{} nodes",
                    change / scale, config.quad_nodes),
        coarse(1), fine(1));
  }
  ClassicalFimResult out;
  out.fim = to_fisher(fine, output);
  out.normalization = fine(0);
  out.error_estimate = change;
  out.evaluations = evaluations;
  return out;
}

}  // namespace

void HomodyneConfig::validate() const {
  if (quad_nodes < 32) throw ParameterError(fmt::format("quad_nodes={} < 32", quad_nodes));
  if (!(quad_floor > 0.0)) throw ParameterError("quad_floor must be positive");
  if (!(rel_tol > 0.0 && rel_tol < 1e-2)) throw ParameterError("rel_tol must lie in (0, 1e-2)");
  if (!std::isfinite(lo_phase_a) || !std::isfinite(lo_phase_b) ||
      !std::isfinite(operating_phase)) {
    throw ParameterError("homodyne phases must be finite");
  }
}

Eigen::VectorXd hermite_functions(int mmax, double x) {
  if (mmax < 0) throw ParameterError("hermite_functions: negative order");
  return hermite_table(mmax, x, true);
}

cplx quadrature_amplitude(int m, double x, double lo_phase) {
  if (m < 0) throw ParameterError("quadrature_amplitude: negative photon number");
  return std::polar(hermite_table(m, x, true)(m), -m * lo_phase);
}

DetectedModel detected_model(const ProbeOutput& output, const HomodyneConfig& config) {
  const TwoModeBasis& basis = *output.basis;
  const Eigen::Index d = basis.dimension();
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Identity(d, d);
  if (config.phase_locked) {
    t = phase_shift_matrix(basis, Mode::a, config.operating_phase - output.point.phi);
  }
  if (config.recombine) t = balanced_beam_splitter(basis) * t;
  const Eigen::MatrixXcd td = t.adjoint();
  return {t * output.rho * td, {t * output.d_rho[0] * td, t * output.d_rho[1] * td}};
}

double joint_pdf(const ProbeOutput& output, double x_a, double x_b, const HomodyneConfig& config) {
  const TwoModeBasis& basis = *output.basis;
  const int N = basis.total_photons();
  const DetectedModel model = detected_model(output, config);
  const Eigen::VectorXcd qa = mode_amplitudes(N, x_a, config.lo_phase_a, true);
  const Eigen::VectorXcd qb = mode_amplitudes(N, x_b, config.lo_phase_b, true);
  Eigen::VectorXcd q(basis.dimension());
  for (Eigen::Index j = 0; j < basis.dimension(); ++j) {
    q(j) = qa(basis.state(j).m_a) * qb(basis.state(j).m_b);
  }
  return std::max(0.0, (q.transpose() * model.rho * q.conjugate())(0, 0).real());
}

ClassicalFimResult classical_fim_detailed(const ProbeOutput& output, const HomodyneConfig& config) {
  config.validate();
  const DetectedModel model = detected_model(output, config);
  ClassicalFimResult r = config.rule == QuadratureRuleKind::adaptive
                             ? adaptive_fim(output, model, config)
                             : hermite_fim(output, model, config);
  r.fim.entries = 0.5 * (r.fim.entries + r.fim.entries.transpose()).eval();
  return r;
}

FisherMatrix classical_fim(const ProbeOutput& output, const HomodyneConfig& config) {
  return classical_fim_detailed(output, config).fim;
}

double classical_bound(const FisherMatrix& fim, const WeightMatrix& w) {
  return weighted_inverse_trace(fim, w);
}

}  // namespace qcompat
