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
#include <optional>
#include <string>
#include <vector>

#include "qcompat/channel.hpp"
#include "qcompat/compat.hpp"

namespace qcompat {

/// Environment variable holding the default worker count.
inline constexpr const char* kWorkersEnv = "QCOMPAT_WORKERS";

/// One sweep: every probe times every parameter tuple times every weight.
struct SweepSpec {
  Scenario scenario;
  std::vector<ProbeLabel> probes;
  std::vector<double> y_grid;
  std::vector<double> phi;
  std::vector<double> eta_a;
  std::vector<double> eta_b;
  std::vector<double> delta;
  EvaluationConfig evaluation;
  std::filesystem::path output_path;
  std::optional<std::filesystem::path> gnuplot_path;
  /// 0 selects the environment default, then the hardware concurrency.
  int workers = 0;

  /// Throws ParameterError on empty grids, y outside [0, 1] or bad labels.
  void validate() const;
};

/// Parses a YAML sweep file. Relative output paths are kept as written.
SweepSpec load_sweep_spec(const std::filesystem::path& file);
SweepSpec parse_sweep_spec(const std::string& yaml_text);

struct SweepSummary {
  std::size_t points = 0;
  std::size_t failures = 0;
  double wall_seconds = 0.0;
  int workers = 1;
};

/// Worker count: explicit value if positive, else the environment default,
/// else the hardware concurrency.
int resolve_workers(int requested);

/// Evaluates every point and writes the CSV (and optional gnuplot script).
/// The output file is opened before any computation; an unwritable path
/// throws IoError. Rows are sorted by their keys so the data section does
/// not depend on the worker count.
SweepSummary run_sweep(const SweepSpec& spec);

/// Evaluates a sweep in memory; rows are returned in sorted order.
std::vector<CompatPoint> evaluate_sweep(const SweepSpec& spec, int workers,
                                        std::size_t* failures = nullptr);

inline constexpr const char* kCsvHeader =
    "scenario,N,n,y,phi,eta_a,eta_b,delta,c_c,c_q,c_h,r_ch,r_bg,flags";

std::string csv_row(const CompatPoint& point);

/// Parses a data row written by run_sweep.
CompatPoint parse_csv_row(const std::string& line);

/// Reads all data rows of a sweep CSV. Throws IoError if missing.
std::vector<CompatPoint> read_sweep_csv(const std::filesystem::path& file);

}  // namespace qcompat
