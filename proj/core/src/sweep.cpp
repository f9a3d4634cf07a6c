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


#include "qcompat/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>
#include <tuple>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "qcompat/errors.hpp"

namespace qcompat {

namespace {

std::vector<double> read_list(const YAML::Node& node, const char* key, std::vector<double> fallback) {
  const YAML::Node v = node[key];
  if (!v) return fallback;
  if (v.IsScalar()) return {v.as<double>()};
  return v.as<std::vector<double>>();
}

std::vector<double> read_y_grid(const YAML::Node& node) {
  const YAML::Node v = node["y_grid"];
  if (!v) throw ParameterError("sweep spec: missing y_grid");
  if (v.IsMap()) {
    const double from = v["from"].as<double>(0.0);
    const double to = v["to"].as<double>(1.0);
    const int count = v["count"].as<int>();
    if (count < 1) throw ParameterError("sweep spec: y_grid.count must be positive");
    std::vector<double> ys;
    for (int i = 0; i < count; ++i) {
      ys.push_back(count == 1 ? from : from + (to - from) * i / (count - 1));
    }
    return ys;
  }
  if (v.IsScalar()) return {v.as<double>()};
  return v.as<std::vector<double>>();
}

std::vector<ProbeLabel> read_probes(const YAML::Node& node) {
  const YAML::Node v = node["probes"];
  if (!v || !v.IsSequence()) throw ParameterError("sweep spec: probes must be a list");
  std::vector<ProbeLabel> probes;
  for (const auto& p : v) {
    const int N = p["N"].as<int>();
    const YAML::Node n = p["n"];
    probes.push_back(n ? ProbeLabel{N, n.as<int>()} : ProbeLabel::holland_burnett(N));
  }
  return probes;
}

HomodyneConfig read_homodyne(const YAML::Node& node) {
  HomodyneConfig c;
  if (!node) return c;
  c.lo_phase_a = node["lo_phase_a"].as<double>(c.lo_phase_a);
  c.lo_phase_b = node["lo_phase_b"].as<double>(c.lo_phase_b);
  c.recombine = node["recombine"].as<bool>(c.recombine);
  c.phase_locked = node["phase_locked"].as<bool>(c.phase_locked);
  c.operating_phase = node["operating_phase"].as<double>(c.operating_phase);
  const std::string rule = node["rule"].as<std::string>("adaptive");
  if (rule == "adaptive") {
    c.rule = QuadratureRuleKind::adaptive;
  } else if (rule == "gauss_hermite") {
    c.rule = QuadratureRuleKind::gauss_hermite;
  } else {
    throw ParameterError(fmt::format("sweep spec: unknown quadrature rule '{}'", rule));
  }
  c.quad_nodes = node["quad_nodes"].as<int>(c.quad_nodes);
  c.quad_floor = node["quad_floor"].as<double>(c.quad_floor);
  c.rel_tol = node["rel_tol"].as<double>(c.rel_tol);
  return c;
}

SweepSpec from_yaml(const YAML::Node& root) {
  if (!root.IsMap()) throw ParameterError("sweep spec: top level must be a mapping");
  SweepSpec spec;
  spec.scenario = Scenario::of(parse_scenario(root["scenario"].as<std::string>()));
  spec.probes = read_probes(root);
  spec.y_grid = read_y_grid(root);
  const ParamPoint defaults;
  spec.phi = read_list(root, "phi", {defaults.phi});
  spec.eta_a = read_list(root, "eta_a", {defaults.eta_a});
  spec.eta_b = read_list(root, "eta_b", {defaults.eta_b});
  spec.delta = read_list(root, "delta", {defaults.delta});
  spec.evaluation.homodyne = read_homodyne(root["homodyne"]);
  if (const YAML::Node o = root["output"]) spec.output_path = o.as<std::string>();
  if (const YAML::Node g = root["gnuplot"]) spec.gnuplot_path = g.as<std::string>();
  spec.workers = root["workers"].as<int>(0);
  spec.validate();
  return spec;
}

using RowKey = std::tuple<int, int, double, double, double, double, double>;

RowKey key_of(const CompatPoint& p) {
  return {p.label.N, p.label.n, p.params.phi, p.params.eta_a, p.params.eta_b, p.params.delta, p.y};
}

CompatPoint failed_point(const Scenario& scenario, const ProbeLabel& label, const ParamPoint& params,
                         double y, const std::string& token) {
  CompatPoint p;
  p.scenario = scenario;
  p.label = label;
  p.params = params;
  p.y = y;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  p.c_c = p.c_q = p.c_h = p.r_ch = p.r_bg = nan;
  p.flags.push_back(token);
  return p;
}

std::string error_token(const Error& e) {
  std::string token = fmt::format("error={}@{}", e.kind(), e.stage().empty() ? "?" : e.stage());
  if (const auto* s = dynamic_cast<const SingularityError*>(&e)) token += ":" + s->parameter();
  return token;
}

std::string fmt_num(double v) { return fmt::format("{:.12g}", v); }

void write_gnuplot(const SweepSpec& spec, const std::filesystem::path& script) {
  std::ofstream out(script);
  if (!out) throw IoError(fmt::format("cannot write gnuplot script {}", script.string()));
  out << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set xlabel 'y'\n"
      << "set multiplot layout 1,2\n";
  const std::string data = spec.output_path.string();
  for (const auto& [column, label] : {std::pair{12, "r_ch"}, std::pair{13, "r_bg"}}) {
    out << fmt::format("set ylabel '{}'\nplot ", label);
    for (std::size_t i = 0; i < spec.probes.size(); ++i) {
      const ProbeLabel& p = spec.probes[i];
      out << fmt::format("{}'{}' using 4:(($2=={} && $3=={}) ? ${} : 1/0) with linespoints "
                         "title 'N={} n={}'",
                         i ? ", " : "", data, p.N, p.n, column, p.N, p.n);
    }
    out << "\n";
  }
  out << "unset multiplot\n";
}

}  // namespace

void SweepSpec::validate() const {
  if (probes.empty()) throw ParameterError("sweep spec: no probes");
  for (const auto& p : probes) {
    if (p.N < 1 || p.N > TwoModeBasis::kMaxPhotons || p.n < 0 || p.n > p.N) {
      throw ParameterError(fmt::format("sweep spec: invalid probe N={} n={}", p.N, p.n));
    }
  }
  if (y_grid.empty()) throw ParameterError("sweep spec: empty y_grid");
  for (double y : y_grid) {
    if (!(y >= 0.0 && y <= 1.0)) throw ParameterError(fmt::format("sweep spec: y={} outside [0, 1]", y));
  }
  if (phi.empty() || eta_a.empty() || eta_b.empty() || delta.empty()) {
    throw ParameterError("sweep spec: parameter grids must be non-empty");
  }
  evaluation.homodyne.validate();
}

SweepSpec parse_sweep_spec(const std::string& yaml_text) {
  try {
    return from_yaml(YAML::Load(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ParameterError(fmt::format("sweep spec: {}", e.what()));
  }
}

SweepSpec load_sweep_spec(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError(fmt::format("cannot read sweep spec {}", file.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_sweep_spec(buf.str());
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv(kWorkersEnv)) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<CompatPoint> evaluate_sweep(const SweepSpec& spec, int workers, std::size_t* failures) {
  spec.validate();
  struct Task {
    ProbeLabel label;
    ParamPoint params;
  };
  std::vector<Task> tasks;
  for (const auto& label : spec.probes) {
    for (double phi : spec.phi) {
      for (double ea : spec.eta_a) {
        for (double eb : spec.eta_b) {
          for (double dl : spec.delta) tasks.push_back({label, {phi, ea, eb, dl}});
        }
      }
    }
  }

  std::vector<std::vector<CompatPoint>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      std::vector<CompatPoint>& rows = results[i];
      try {
        const ProbeEvaluation probe =
            prepare_probe(spec.scenario, t.label, t.params, spec.evaluation);
        for (double y : spec.y_grid) {
          try {
            rows.push_back(evaluate_weight(probe, y, spec.evaluation));
          } catch (const Error& e) {
            rows.push_back(failed_point(spec.scenario, t.label, t.params, y, error_token(e)));
          }
        }
      } catch (const Error& e) {
        for (double y : spec.y_grid) {
          rows.push_back(failed_point(spec.scenario, t.label, t.params, y, error_token(e)));
        }
      }
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(tasks.size())));
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < n; ++w) pool.emplace_back(work);
    work();
  }

  std::vector<CompatPoint> rows;
  std::size_t failed = 0;
  for (auto& r : results) {
    for (auto& p : r) {
      if (std::isnan(p.c_h)) ++failed;
      rows.push_back(std::move(p));
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const CompatPoint& a, const CompatPoint& b) { return key_of(a) < key_of(b); });
  if (failures) *failures = failed;
  return rows;
}

std::string csv_row(const CompatPoint& p) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}", p.scenario.name(), p.label.N,
                     p.label.n, fmt_num(p.y), fmt_num(p.params.phi), fmt_num(p.params.eta_a),
                     fmt_num(p.params.eta_b), fmt_num(p.params.delta), fmt_num(p.c_c),
                     fmt_num(p.c_q), fmt_num(p.c_h), fmt_num(p.r_ch), fmt_num(p.r_bg),
                     p.flag_string());
}

SweepSummary run_sweep(const SweepSpec& spec) {
  spec.validate();
  if (spec.output_path.empty()) throw IoError("sweep spec: no output path");
  std::ofstream out(spec.output_path, std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open {} for writing", spec.output_path.string()));

  SweepSummary summary;
  summary.workers = resolve_workers(spec.workers);
  const auto start = std::chrono::steady_clock::now();
  const std::vector<CompatPoint> rows = evaluate_sweep(spec, summary.workers, &summary.failures);
  summary.points = rows.size();
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  out << fmt::format("# qcompat sweep {} generated {:%Y-%m-%dT%H:%M:%SZ}\n", spec.scenario.name(),
                     fmt::gmtime(std::time(nullptr)));
  out << kCsvHeader << '\n';
  for (const auto& r : rows) out << csv_row(r) << '\n';
  out.flush();
  if (!out) throw IoError(fmt::format("write to {} failed", spec.output_path.string()));
  if (spec.gnuplot_path) write_gnuplot(spec, *spec.gnuplot_path);
  return summary;
}

CompatPoint parse_csv_row(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) f.push_back(cell);
  if (!line.empty() && line.back() == ',') f.emplace_back();
  if (f.size() != 14) throw IoError(fmt::format("malformed CSV row: '{}'", line));
  CompatPoint p;
  try {
    p.scenario = Scenario::of(parse_scenario(f[0]));
    p.label = {std::stoi(f[1]), std::stoi(f[2])};
    p.y = std::stod(f[3]);
    p.params = {std::stod(f[4]), std::stod(f[5]), std::stod(f[6]), std::stod(f[7])};
    p.c_c = std::stod(f[8]);
    p.c_q = std::stod(f[9]);
    p.c_h = std::stod(f[10]);
    p.r_ch = std::stod(f[11]);
    p.r_bg = std::stod(f[12]);
  } catch (const std::logic_error&) {
    throw IoError(fmt::format("malformed CSV row: '{}'", line));
  }
  std::stringstream fs(f[13]);
  while (std::getline(fs, cell, ';')) {
    if (!cell.empty()) p.flags.push_back(cell);
  }
  return p;
}

std::vector<CompatPoint> read_sweep_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError(fmt::format("cannot read {}", file.string()));
  std::vector<CompatPoint> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kCsvHeader) throw IoError(fmt::format("{}: unexpected header", file.string()));
      header_seen = true;
      continue;
    }
    rows.push_back(parse_csv_row(line));
  }
  if (!header_seen) throw IoError(fmt::format("{}: missing header", file.string()));
  return rows;
}

}  // namespace qcompat
