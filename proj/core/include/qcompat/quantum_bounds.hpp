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

#include <Eigen/Dense>

#include "qcompat/channel.hpp"
#include "qcompat/fisher.hpp"

namespace qcompat {

struct SldPair {
  std::array<Eigen::MatrixXcd, 2> L;
  int support_rank = 0;
  double rank_tolerance = 0.0;
};

/// Symmetric logarithmic derivatives of the estimated pair. Eigen-pairs with
/// lambda_i + lambda_j <= rel_tol * lambda_max are dropped.
SldPair sld(const ProbeOutput& output, double rel_tol = 1e-10);

FisherMatrix qfim(const ProbeOutput& output, const SldPair& slds);
FisherMatrix qfim(const ProbeOutput& output);

/// Tr(W F_Q^{-1}); throws SingularityError when F_Q is not invertible.
double qcrb(const FisherMatrix& fim, const WeightMatrix& w);

/// |Tr(rho [L_1, L_2])|. Zero exactly when the Holevo and SLD bounds coincide.
double commutation_check(const ProbeOutput& output, const SldPair& slds);
double commutation_check(const ProbeOutput& output);

}  // namespace qcompat
