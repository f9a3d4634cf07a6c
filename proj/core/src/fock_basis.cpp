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

#include "qcompat/fock_basis.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qcompat/errors.hpp"

namespace qcompat {

TwoModeBasis::TwoModeBasis(int total_photons) : total_photons_(total_photons) {
  if (total_photons < 1 || total_photons > kMaxPhotons) {
    throw ParameterError(fmt::format(
        "total photon number must lie in [1, {}], got {}", kMaxPhotons, total_photons));
  }
  states_.reserve(static_cast<std::size_t>((total_photons + 1) * (total_photons + 2) / 2));
  for (int t = 0; t <= total_photons; ++t) {
    for (int m_a = 0; m_a <= t; ++m_a) {
      states_.push_back({m_a, t - m_a});
    }
  }
}

std::optional<Eigen::Index> TwoModeBasis::find(int m_a, int m_b) const noexcept {
  if (m_a < 0 || m_b < 0 || m_a + m_b > total_photons_) return std::nullopt;
  const int t = m_a + m_b;
  return static_cast<Eigen::Index>(t * (t + 1) / 2 + m_a);
}

Eigen::Index TwoModeBasis::index_of(int m_a, int m_b) const {
  if (auto i = find(m_a, m_b)) return *i;
  throw ParameterError(
      fmt::format("state |{}, {}> is outside the N={} truncation", m_a, m_b, total_photons_));
}

Eigen::Index TwoModeBasis::sector_begin(int total) const {
  if (total < 0 || total > total_photons_) {
    throw ParameterError(fmt::format("no sector with {} photons", total));
  }
  return static_cast<Eigen::Index>(total * (total + 1) / 2);
}

std::shared_ptr<const TwoModeBasis> build_basis(int total_photons) {
  return std::make_shared<const TwoModeBasis>(total_photons);
}

Eigen::MatrixXd annihilation_matrix(const TwoModeBasis& basis, Mode mode) {
  const Eigen::Index d = basis.dimension();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const FockState& s = basis.state(j);
    if (mode == Mode::a && s.m_a > 0) {
      a(basis.index_of(s.m_a - 1, s.m_b), j) = std::sqrt(static_cast<double>(s.m_a));
    } else if (mode == Mode::b && s.m_b > 0) {
      a(basis.index_of(s.m_a, s.m_b - 1), j) = std::sqrt(static_cast<double>(s.m_b));
    }
  }
  return a;
}

Eigen::MatrixXd number_matrix(const TwoModeBasis& basis, Mode mode) {
  Eigen::VectorXd n(basis.dimension());
  for (Eigen::Index j = 0; j < basis.dimension(); ++j) {
    const FockState& s = basis.state(j);
    n(j) = mode == Mode::a ? s.m_a : s.m_b;
  }
  return n.asDiagonal();
}

Eigen::MatrixXcd phase_shift_matrix(const TwoModeBasis& basis, Mode mode, double angle) {
  Eigen::VectorXcd diag(basis.dimension());
  for (Eigen::Index j = 0; j < basis.dimension(); ++j) {
    const FockState& s = basis.state(j);
    const int n = mode == Mode::a ? s.m_a : s.m_b;
    diag(j) = std::polar(1.0, -angle * n);
  }
  return diag.asDiagonal();
}

Eigen::MatrixXcd balanced_beam_splitter(const TwoModeBasis& basis) {
  const Eigen::MatrixXd a = annihilation_matrix(basis, Mode::a);
  const Eigen::MatrixXd b = annihilation_matrix(basis, Mode::b);
  const Eigen::MatrixXd generator = a.transpose() * b + b.transpose() * a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(generator);
  const double theta = std::numbers::pi / 4.0;
  Eigen::VectorXcd phases(generator.rows());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::polar(1.0, -theta * eig.eigenvalues()(i));
  }
  const Eigen::MatrixXcd v = eig.eigenvectors().cast<cplx>();
  return v * phases.asDiagonal() * v.adjoint();
}

}  // namespace qcompat
