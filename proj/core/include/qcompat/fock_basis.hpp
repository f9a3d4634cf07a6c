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

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace qcompat {

using cplx = std::complex<double>;

/// Dense operator over a truncated two-mode Fock space (density matrices,
/// their derivatives, SLDs, Holevo X operators).
using ComplexOperator = Eigen::MatrixXcd;

enum class Mode { a, b };

struct FockState {
  int m_a = 0;
  int m_b = 0;

  int total() const noexcept { return m_a + m_b; }
  friend bool operator==(const FockState&, const FockState&) = default;
};

/// All two-mode Fock states |m_a, m_b> with m_a + m_b <= N.
///
/// States are ordered by total photon number, then by m_a, so every
/// fixed-photon-number sector occupies a contiguous index range:
///
///   index(m_a, m_b) = t (t + 1) / 2 + m_a,   t = m_a + m_b.
///
/// Photon loss never increases the photon number, so this space holds every
/// state reachable from an N-photon input without truncation error.
class TwoModeBasis {
 public:
  static constexpr int kMaxPhotons = 10;

  /// Throws ParameterError unless 1 <= total_photons <= kMaxPhotons.
  explicit TwoModeBasis(int total_photons);

  int total_photons() const noexcept { return total_photons_; }
  Eigen::Index dimension() const noexcept {
    return static_cast<Eigen::Index>(states_.size());
  }
  const std::vector<FockState>& states() const noexcept { return states_; }
  const FockState& state(Eigen::Index i) const { return states_.at(static_cast<std::size_t>(i)); }

  std::optional<Eigen::Index> find(int m_a, int m_b) const noexcept;
  /// Throws ParameterError when (m_a, m_b) is outside the truncation.
  Eigen::Index index_of(int m_a, int m_b) const;
  Eigen::Index index_of(const FockState& s) const { return index_of(s.m_a, s.m_b); }

  /// First index of the sector with `total` photons; the sector has
  /// total + 1 consecutive entries.
  Eigen::Index sector_begin(int total) const;
  Eigen::Index sector_size(int total) const { return total + 1; }

 private:
  int total_photons_;
  std::vector<FockState> states_;
};

std::shared_ptr<const TwoModeBasis> build_basis(int total_photons);

/// Matrix of the annihilation operator of `mode` in the truncated basis.
/// Entries that would leave the truncation are absent (photon number only
/// decreases), so the matrix is exact on the space.
Eigen::MatrixXd annihilation_matrix(const TwoModeBasis& basis, Mode mode);

/// Diagonal number operator of `mode`.
Eigen::MatrixXd number_matrix(const TwoModeBasis& basis, Mode mode);

/// e^{-i angle n_mode}, diagonal in the Fock basis.
Eigen::MatrixXcd phase_shift_matrix(const TwoModeBasis& basis, Mode mode, double angle);

/// Balanced beam splitter exp[-i (pi/4)(a^dag b + b^dag a)], computed from
/// the spectral decomposition of the real symmetric generator. Each
/// photon-number sector is invariant, so the truncated matrix is unitary.
Eigen::MatrixXcd balanced_beam_splitter(const TwoModeBasis& basis);

}  // namespace qcompat
