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


#include "qcompat/probe.hpp"

#include <algorithm>
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

// 2F1(-n, -p; -N; 2) as a terminating sum. Consecutive terms differ by
// 2 (j - n)(j - p) / ((j - N)(j + 1)).
double terminating_hypergeometric(int N, int n, int p) {
  double term = 1.0;
  double sum = 1.0;
  const int last = std::min(n, p);
  for (int j = 0; j < last; ++j) {
    term *= 2.0 * (j - n) * (j - p) / (static_cast<double>(j - N) * (j + 1));
    sum += term;
  }
  return sum;
}

}  // namespace

ProbeLabel ProbeLabel::holland_burnett(int N) {
  if (N < 1 || N % 2 != 0) {
    throw ParameterError(fmt::format("Holland-Burnett probe needs even N >= 2, got {}", N));
  }
  return {N, N / 2};
}

double kravchuk_coefficient(int N, int n, int p) {
  if (N < 0 || n < 0 || n > N || p < 0 || p > N) {
    throw ParameterError(fmt::format("Kravchuk index out of range: N={} n={} p={}", N, n, p));
  }
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double scale = std::sqrt(std::ldexp(binomial(N, n) * binomial(N, p), -N));
  return sign * scale * terminating_hypergeometric(N, n, p);
}

Eigen::MatrixXd kravchuk_matrix(int N) {
  Eigen::MatrixXd k(N + 1, N + 1);
  for (int n = 0; n <= N; ++n) {
    for (int p = 0; p <= N; ++p) k(n, p) = kravchuk_coefficient(N, n, p);
  }
  return k;
}

PureState ghb_state(std::shared_ptr<const TwoModeBasis> basis, int n) {
  if (!basis) throw ParameterError("ghb_state: null basis");
  const int N = basis->total_photons();
  if (n < 0 || n > N) {
    throw ParameterError(fmt::format("gHB index n={} outside [0, {}]", n, N));
  }
  PureState out{basis, Eigen::VectorXcd::Zero(basis->dimension()), {N, n}};
  for (int p = 0; p <= N; ++p) {
    out.amplitudes(basis->index_of(p, N - p)) = kravchuk_coefficient(N, n, p);
  }
  return out;
}

PureState hb_state(std::shared_ptr<const TwoModeBasis> basis) {
  if (!basis) throw ParameterError("hb_state: null basis");
  return ghb_state(basis, ProbeLabel::holland_burnett(basis->total_photons()).n);
}

}  // namespace qcompat
