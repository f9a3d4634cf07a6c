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

#include <stdexcept>
#include <string>
#include <utility>

namespace qcompat {

/// Root of the library's exception hierarchy.
///
/// `stage()` is empty when thrown and is filled in by orchestration code
/// (see `evaluate_point`) to name the pipeline step that failed.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}

  const std::string& stage() const noexcept { return stage_; }
  void set_stage(std::string stage) { stage_ = std::move(stage); }

  virtual const char* kind() const noexcept { return "Error"; }

 private:
  std::string stage_;
};

/// An argument lies outside the documented domain.
class ParameterError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "ParameterError"; }
};

/// A numerical integral failed its convergence test.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double coarse, double fine)
      : Error(what), coarse_(coarse), fine_(fine) {}

  double coarse_estimate() const noexcept { return coarse_; }
  double fine_estimate() const noexcept { return fine_; }
  const char* kind() const noexcept override { return "ConvergenceError"; }

 private:
  double coarse_;
  double fine_;
};

/// A Fisher matrix is singular or too ill-conditioned to invert.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, std::string parameter)
      : Error(what), parameter_(std::move(parameter)) {}

  /// Name of the parameter carrying the degenerate direction.
  const std::string& parameter() const noexcept { return parameter_; }
  const char* kind() const noexcept override { return "SingularityError"; }

 private:
  std::string parameter_;
};

/// The statistical model cannot support the requested bound (e.g. linearly
/// dependent derivatives, infeasible unbiasedness constraints).
class DegenerateModelError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "DegenerateModelError"; }
};

/// A caller-side precondition on computed inputs was violated.
class ContractError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "ContractError"; }
};

/// An approximation was requested outside its regime of validity.
class ApplicabilityError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "ApplicabilityError"; }
};

class IoError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "IoError"; }
};

}  // namespace qcompat
