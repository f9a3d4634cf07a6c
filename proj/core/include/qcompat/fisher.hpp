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
#include <optional>

#include <Eigen/Dense>

#include "qcompat/channel.hpp"

namespace qcompat {

enum class FisherKind { classical, quantum };

struct FisherMatrix {
  Eigen::Matrix2d entries = Eigen::Matrix2d::Zero();
  FisherKind kind = FisherKind::classical;
  std::array<Param, 2> params{Param::phi, Param::eta_a};
};

/// 2x2 real symmetric PSD penalty matrix.
struct WeightMatrix {
  Eigen::Matrix2d entries = Eigen::Matrix2d::Identity();
  /// Set when built from the diag(2y, 2(1-y)) family.
  std::optional<double> y;
};

/// diag(2y, 2(1-y)); throws ParameterError for y outside [0, 1].
WeightMatrix weight_matrix(double y);

/// Tr(W F^{-1}). Throws SingularityError, naming the parameter with the
/// weakest information, when cond(F) > max_condition.
double weighted_inverse_trace(const FisherMatrix& fim, const WeightMatrix& w,
                              double max_condition = 1e12);

}  // namespace qcompat
