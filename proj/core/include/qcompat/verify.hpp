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

#include <filesystem>
#include <string>
#include <vector>

#include "qcompat/compat.hpp"

namespace qcompat {

struct Assertion {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<Assertion> assertions;
  bool all_passed() const;
};

/// Sweep CSVs that verify_figures expects in its fixture directory.
std::vector<std::string> required_fixtures();

/// Qualitative checks on sweep output: curve crossings, orderings, endpoint
/// and weak-compatibility collapses, and the bound sandwich. Throws IoError
/// when a required CSV is missing.
VerifyReport verify_figures(const std::filesystem::path& fixture_dir);

/// y positions where two curves sampled on the same grid change order,
/// located by linear interpolation.
std::vector<double> curve_crossings(const std::vector<double>& y, const std::vector<double>& a,
                                    const std::vector<double>& b);

}  // namespace qcompat
