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


#include "qcompat/fisher.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "qcompat/errors.hpp"

namespace qcompat {

WeightMatrix weight_matrix(double y) {
  if (!(y >= 0.0 && y <= 1.0)) throw ParameterError(fmt::format("weight y={} outside [0, 1]", y));
  WeightMatrix w;
  w.entries << 2.0 * y, 0.0, 0.0, 2.0 * (1.0 - y);
  w.y = y;
  return w;
}

double weighted_inverse_trace(const FisherMatrix& fim, const WeightMatrix& w,
                              double max_condition) {
  const Eigen::Matrix2d f = 0.5 * (fim.entries + fim.entries.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(f);
  const double lo = eig.eigenvalues()(0);
  const double hi = eig.eigenvalues()(1);
  if (!(hi > 0.0) || !(lo > hi / max_condition)) {
    const Eigen::Vector2d v = eig.eigenvectors().col(0).cwiseAbs();
    const Param weak = v(0) >= v(1) ? fim.params[0] : fim.params[1];
    throw SingularityError(
        fmt::format("{} Fisher matrix is singular (eigenvalues {:.3e}, {:.3e}); no information "
                    "on {}",
                    fim.kind == FisherKind::quantum ? "quantum" : "classical", lo, hi,
                    param_name(weak)),
        std::string(param_name(weak)));
  }
  return (w.entries * f.inverse()).trace();
}

}  // namespace qcompat
