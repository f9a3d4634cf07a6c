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


// qcompat: sweeps, figure checks, single points and oracle self-tests.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "oracles.hpp"
#include "qcompat/compat.hpp"
#include "qcompat/errors.hpp"
#include "qcompat/holevo.hpp"
#include "qcompat/quantum_bounds.hpp"
#include "qcompat/sweep.hpp"
#include "qcompat/verify.hpp"

namespace {

using namespace qcompat;

struct SweepArgs {
  std::string spec_file;
  std::string output;
  std::string gnuplot;
  int workers = 0;
};

struct PointArgs {
  std::string scenario = "phase_loss_one_arm";
  int N = 2;
  int n = 1;
  double y = 0.5;
  ParamPoint params;
  std::string rule = "adaptive";
};

int run_sweep_command(const SweepArgs& args) {
  SweepSpec spec = load_sweep_spec(args.spec_file);
  if (!args.output.empty()) spec.output_path = args.output;
  if (!args.gnuplot.empty()) spec.gnuplot_path = args.gnuplot;
  if (args.workers > 0) spec.workers = args.workers;
  const SweepSummary s = run_sweep(spec);
  fmt::print("{}: {} points, {} failed, {} workers, {:.2f} s\n", spec.output_path.string(),
             s.points, s.failures, s.workers, s.wall_seconds);
  return 0;
}

int run_verify_command(const std::string& dir) {
  const VerifyReport report = verify_figures(dir);
  for (const Assertion& a : report.assertions) {
    fmt::print("{} {:<40} {}\n", a.passed ? "PASS" : "FAIL", a.name, a.detail);
  }
  return report.all_passed() ? 0 : 1;
}

int run_point_command(const PointArgs& args) {
  const Scenario scenario = Scenario::of(parse_scenario(args.scenario));
  EvaluationConfig config;
  if (args.rule == "gauss_hermite") {
    config.homodyne.rule = QuadratureRuleKind::gauss_hermite;
  } else if (args.rule != "adaptive") {
    throw ParameterError(fmt::format("unknown quadrature rule '{}'", args.rule));
  }
  const CompatPoint p =
      evaluate_point(scenario, ProbeLabel{args.N, args.n}, args.params, args.y, config);
  fmt::print("{}\n{}\n", kCsvHeader, csv_row(p));
  fmt::print("commutation     {:.6e}\n", p.commutation);
  fmt::print("hcrb status     {}\n", solver_status_name(p.holevo.status));
  fmt::print("hcrb solver     {}\n", p.holevo.solver);
  fmt::print("hcrb dual       {:.12g}\n", p.holevo.dual_value);
  fmt::print("hcrb gap        {:.3e}\n", p.holevo.gap);
  fmt::print("hcrb residual   {:.3e}\n", p.holevo.unbiasedness_residual);
  fmt::print("hcrb multiplier {:.12g}\n", p.holevo.multiplier);
  fmt::print("retained dim    {}\n", p.holevo.retained_dim);
  fmt::print("flags           {}\n", p.flags.empty() ? "(none)" : p.flag_string());
  return 0;
}

struct Check {
  int failed = 0;

  void report(const std::string& name, double error, double tol) {
    const bool ok = error <= tol;
    if (!ok) ++failed;
    fmt::print("{} {:<34} error {:.3e} (tol {:.0e})\n", ok ? "PASS" : "FAIL", name, error, tol);
  }
};

int run_selftest() {
  Check check;

  const std::vector<ParamPoint> grid = {{0.3, 1.0, 1.0, 0.0},
                                        {0.7, 0.5, 1.0, 0.0},
                                        {1.1, 0.8, 0.6, 0.0},
                                        {0.4, 0.9, 0.9, 0.3},
                                        {2.0, 0.3, 0.7, 0.0}};
  double channel_err = 0.0;
  for (int N = 1; N <= 3; ++N) {
    for (int n = 0; n <= N; ++n) {
      for (const ParamPoint& p : grid) {
        const Scenario sc = p.delta > 0.0 ? Scenario::dephasing() : Scenario::ref_arm_known();
        const ProbeOutput out = output_state(sc, ProbeLabel{N, n}, p);
        const Eigen::MatrixXcd ref = oracle::kraus_channel_state(ProbeLabel{N, n}, p);
        channel_err = std::max(channel_err, (out.rho - ref).cwiseAbs().maxCoeff());
      }
    }
  }
  check.report("channel vs Kraus matrices", channel_err, 1e-8);

  double deriv_err = 0.0;
  for (const Scenario& sc : {Scenario::one_arm(), Scenario::ref_arm_known()}) {
    const ParamPoint p{0.6, 0.7, sc.kind == ScenarioKind::phase_loss_one_arm ? 1.0 : 0.8, 0.0};
    const ProbeOutput out = output_state(sc, ProbeLabel{3, 1}, p);
    for (std::size_t i = 0; i < 2; ++i) {
      const Eigen::MatrixXcd fd = oracle::central_difference(ProbeLabel{3, 1}, p, sc.estimated[i]);
      deriv_err = std::max(deriv_err, (out.d_rho[i] - fd).cwiseAbs().maxCoeff());
    }
  }
  check.report("derivatives vs central differences", deriv_err, 1e-6);

  double qfi_err = 0.0;
  for (int N = 1; N <= 6; ++N) {
    for (int n = 0; n <= N; ++n) {
      const ProbeOutput out = output_state(Scenario::one_arm(), ProbeLabel{N, n},
                                           ParamPoint{0.5, 0.999, 1.0, 0.0});
      const double f = qfim(out).entries(0, 0);
      const double ref = oracle::pure_phase_qfi(N, n);
      qfi_err = std::max(qfi_err, std::abs(f - ref) / std::max(ref, 1.0));
    }
  }
  check.report("phase QFI near the lossless limit", qfi_err, 1e-2);

  double sector_err = 0.0;
  for (const ProbeLabel label : {ProbeLabel{2, 1}, ProbeLabel{4, 2}, ProbeLabel{3, 0}}) {
    const ProbeOutput out =
        output_state(Scenario::one_arm(), label, ParamPoint{0.4, 0.6, 1.0, 0.0});
    const Eigen::Matrix2d ref = oracle::sector_additive_qfim(label, 0.4, 0.6);
    sector_err = std::max(sector_err,
                          (qfim(out).entries - ref).cwiseAbs().maxCoeff() / ref.norm());
  }
  check.report("QFIM vs sector sum", sector_err, 1e-7);

  double holevo_err = 0.0;
  for (const oracle::FrozenHolevo& f : oracle::frozen_holevo_values()) {
    const ProbeOutput out = output_state(Scenario::of(f.scenario), f.label, f.point);
    const double v = hcrb(out, weight_matrix(f.y)).value;
    holevo_err = std::max(holevo_err, std::abs(v - f.value) / std::max(1.0, f.value));
  }
  check.report("Holevo bound vs conic solver", holevo_err, 1e-7);

  fmt::print("{} check(s) failed\n", check.failed);
  return check.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement compatibility of two-mode interferometric probes"};
  app.require_subcommand(1);

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Evaluate a sweep spec and write CSV");
  sweep->add_option("spec-file", sweep_args.spec_file, "YAML sweep spec")->required();
  sweep->add_option("-o,--output", sweep_args.output, "Override the CSV output path");
  sweep->add_option("-g,--gnuplot", sweep_args.gnuplot, "Also write a gnuplot script");
  sweep->add_option("-j,--workers", sweep_args.workers,
                    fmt::format("Worker threads (default: ${} or hardware)", kWorkersEnv));

  std::string fixture_dir;
  auto* verify = app.add_subcommand("verify", "Check qualitative features of sweep CSVs");
  verify->add_option("fixture-dir", fixture_dir, "Directory with the sweep CSVs")->required();

  PointArgs point_args;
  auto* point = app.add_subcommand("point", "Evaluate a single point and print all flags");
  point->add_option("--scenario", point_args.scenario)
      ->check(CLI::IsMember({"phase_loss_one_arm", "phase_loss_ref_arm_known",
                             "phase_dephasing"}));
  point->add_option("-N", point_args.N, "Total photon number")->check(CLI::Range(1, 10));
  point->add_option("-n", point_args.n, "Photons in mode a before the beam splitter");
  point->add_option("-y", point_args.y, "Weight on the phase")->check(CLI::Range(0.0, 1.0));
  point->add_option("--phi", point_args.params.phi);
  point->add_option("--eta-a", point_args.params.eta_a);
  point->add_option("--eta-b", point_args.params.eta_b);
  point->add_option("--delta", point_args.params.delta);
  point->add_option("--rule", point_args.rule, "adaptive or gauss_hermite");

  app.add_subcommand("selftest", "Compare the library against independent oracles");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) return run_sweep_command(sweep_args);
    if (*verify) return run_verify_command(fixture_dir);
    if (*point) return run_point_command(point_args);
    return run_selftest();
  } catch (const Error& e) {
    fmt::print(stderr, "{}{}: {}\n", e.kind(), e.stage().empty() ? "" : "@" + e.stage(),
               e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }
}
