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


#include "qcompat/quantum_bounds.hpp"

#include "qcompat/errors.hpp"

namespace qcompat {

SldPair sld(const ProbeOutput& output, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(output.rho);
  const Eigen::VectorXd& lam = eig.eigenvalues();
  const Eigen::MatrixXcd& u = eig.eigenvectors();
  const double tol = rel_tol * lam.maxCoeff();
  const Eigen::Index d = lam.size();

  SldPair out;
  out.rank_tolerance = tol;
  out.support_rank = static_cast<int>((lam.array() > tol).count());
  if (out.support_rank == 0) throw DegenerateModelError("density matrix has no support");

  for (std::size_t i = 0; i < 2; ++i) {
    const Eigen::MatrixXcd m = u.adjoint() * output.d_rho[i] * u;
    Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index b = 0; b < d; ++b) {
        const double s = lam(a) + lam(b);
        if (s > tol) l(a, b) = 2.0 * m(a, b) / s;
      }
    }
    out.L[i] = u * l * u.adjoint();
  }
  return out;
}

FisherMatrix qfim(const ProbeOutput& output, const SldPair& slds) {
  FisherMatrix f;
  f.kind = FisherKind::quantum;
  f.params = output.estimated;
  for (std::size_t i = 0; i < 2; ++i) {
    const Eigen::MatrixXcd rl = output.rho * slds.L[i];
    for (std::size_t j = 0; j < 2; ++j) {
      f.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          (rl * slds.L[j]).trace().real();
    }
  }
  f.entries = 0.5 * (f.entries + f.entries.transpose()).eval();
  return f;
}

FisherMatrix qfim(const ProbeOutput& output) { return qfim(output, sld(output)); }

double qcrb(const FisherMatrix& fim, const WeightMatrix& w) {
  return weighted_inverse_trace(fim, w);
}

double commutation_check(const ProbeOutput& output, const SldPair& slds) {
  const Eigen::MatrixXcd c = slds.L[0] * slds.L[1] - slds.L[1] * slds.L[0];
  return std::abs((output.rho * c).trace());
}

double commutation_check(const ProbeOutput& output) {
  return commutation_check(output, sld(output));
}

}  // namespace qcompat
