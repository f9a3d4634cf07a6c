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

#include <memory>

#include <Eigen/Dense>

#include "qcompat/fock_basis.hpp"

namespace qcompat {

/// Identifies the generalized Holland-Burnett probe obtained by sending
/// |n, N-n> through a balanced beam splitter.
struct ProbeLabel {
  int N = 2;
  int n = 1;

  /// Holland-Burnett probe: n = N / 2. Throws ParameterError for odd N.
  static ProbeLabel holland_burnett(int N);
  friend auto operator<=>(const ProbeLabel&, const ProbeLabel&) = default;
};

/// Kravchuk amplitude A_N(n, p) of |p, N-p> in the gHB state built from
/// |n, N-n>. Real-valued; the sign convention is fixed (never renormalized).
double kravchuk_coefficient(int N, int n, int p);

/// (N+1)x(N+1) matrix with entries A_N(n, p), rows indexed by n.
Eigen::MatrixXd kravchuk_matrix(int N);

struct PureState {
  std::shared_ptr<const TwoModeBasis> basis;
  Eigen::VectorXcd amplitudes;
  ProbeLabel label;
};

PureState ghb_state(std::shared_ptr<const TwoModeBasis> basis, int n);
PureState hb_state(std::shared_ptr<const TwoModeBasis> basis);

}  // namespace qcompat
