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


#include "qcompat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "qcompat/errors.hpp"
#include "qcompat/sweep.hpp"

namespace qcompat {

namespace {

struct Curve {
  std::vector<double> y;
  std::vector<double> r_ch;
  std::vector<double> r_bg;
};

// Curves keyed by (N, n) for rows sharing the first parameter tuple.
std::map<std::pair<int, int>, Curve> curves(const std::vector<CompatPoint>& rows) {
  std::map<std::pair<int, int>, Curve> out;
  for (const auto& r : rows) {
    Curve& c = out[{r.label.N, r.label.n}];
    c.y.push_back(r.y);
    c.r_ch.push_back(r.r_ch);
    c.r_bg.push_back(r.r_bg);
  }
  return out;
}

const Curve* find_curve(const std::map<std::pair<int, int>, Curve>& cs, int N, int n) {
  auto it = cs.find({N, n});
  return it == cs.end() ? nullptr : &it->second;
}

Assertion ordering(const std::string& name, const std::map<std::pair<int, int>, Curve>& cs,
                   ProbeLabel low_n, ProbeLabel high_n, bool expect_decrease) {
  Assertion a{name, false, ""};
  const Curve* lo = find_curve(cs, low_n.N, low_n.n);
  const Curve* hi = find_curve(cs, high_n.N, high_n.n);
  if (!lo || !hi || lo->y != hi->y) {
    a.detail = "curves missing or sampled on different grids";
    return a;
  }
  int checked = 0;
  for (std::size_t i = 0; i < lo->y.size(); ++i) {
    const double y = lo->y[i];
    if (y <= 0.0 || y >= 1.0) continue;
    ++checked;
    const bool ok = expect_decrease ? hi->r_ch[i] < lo->r_ch[i] : hi->r_ch[i] > lo->r_ch[i];
    if (!ok) {
      a.detail = fmt::format("violated at y={:.3g}: r_ch(N={})={:.6g}, r_ch(N={})={:.6g}", y,
                             low_n.N, lo->r_ch[i], high_n.N, hi->r_ch[i]);
      return a;
    }
  }
  a.passed = checked > 0;
  a.detail = fmt::format("{} interior weights checked", checked);
  return a;
}

std::size_t argext(const std::vector<double>& v, bool maximum) {
  auto it = maximum ? std::max_element(v.begin(), v.end()) : std::min_element(v.begin(), v.end());
  return static_cast<std::size_t>(it - v.begin());
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

std::vector<std::string> required_fixtures() {
  return {"fig1.csv", "fig2.csv", "fig4.csv", "m4_eta_b_0.1.csv", "m4_eta_b_1.csv", "m6.csv"};
}

std::vector<double> curve_crossings(const std::vector<double>& y, const std::vector<double>& a,
                                    const std::vector<double>& b) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    const double d0 = a[i] - b[i];
    const double d1 = a[i + 1] - b[i + 1];
    if (d0 == 0.0) {
      out.push_back(y[i]);
    } else if (d0 * d1 < 0.0) {
      out.push_back(y[i] + (y[i + 1] - y[i]) * d0 / (d0 - d1));
    }
  }
  if (!y.empty() && a.back() == b.back()) out.push_back(y.back());
  return out;
}

VerifyReport verify_figures(const std::filesystem::path& dir) {
  std::map<std::string, std::vector<CompatPoint>> data;
  for (const auto& name : required_fixtures()) {
    const auto path = dir / name;
    if (!std::filesystem::exists(path)) {
      throw IoError(fmt::format("missing sweep output {}", path.string()));
    }
    data[name] = read_sweep_csv(path);
  }
  if (std::filesystem::exists(dir / "fig3.csv")) data["fig3.csv"] = read_sweep_csv(dir / "fig3.csv");

  VerifyReport report;
  auto& out = report.assertions;

  // Fig. 2: N = 2 and N = 4 Holland-Burnett curves cross in y in [0.5, 0.7].
  {
    const auto cs = curves(data["fig2.csv"]);
    Assertion a{"fig2_crossing_hb", false, ""};
    const Curve* c2 = find_curve(cs, 2, 1);
    const Curve* c4 = find_curve(cs, 4, 2);
    if (c2 && c4 && c2->y == c4->y) {
      const auto xs = curve_crossings(c2->y, c2->r_ch, c4->r_ch);
      a.passed = std::any_of(xs.begin(), xs.end(), [](double x) { return x >= 0.5 && x <= 0.7; });
      a.detail = xs.empty() ? "no crossing" : fmt::format("crossings at y = {:.3f}", fmt::join(xs, ", "));
    } else {
      a.detail = "curves missing";
    }
    out.push_back(a);
  }

  // Reference-arm loss orderings.
  out.push_back(ordering("m4_eta_b_0.1_decreasing_hb", curves(data["m4_eta_b_0.1.csv"]), {2, 1},
                         {4, 2}, true));
  out.push_back(ordering("m4_eta_b_1_increasing_hb", curves(data["m4_eta_b_1.csv"]), {2, 1}, {4, 2},
                         false));

  // Fig. 4: weak compatibility of phase and diffusion.
  {
    Assertion a{"fig4_r_bg_unity", true, ""};
    double worst = 0.0;
    for (const auto& r : data["fig4.csv"]) worst = std::max(worst, std::abs(r.r_bg - 1.0));
    a.passed = !data["fig4.csv"].empty() && worst <= 1e-3;
    a.detail = fmt::format("max |r_bg - 1| = {:.3e}", worst);
    out.push_back(a);
  }

  // Fig. 1: endpoint collapse and extremum locations.
  {
    Assertion a{"fig1_endpoint_r_bg", false, ""};
    double worst = 0.0;
    int n = 0;
    for (const auto& r : data["fig1.csv"]) {
      if (r.y == 0.0 || r.y == 1.0) {
        worst = std::max(worst, std::abs(r.r_bg - 1.0));
        ++n;
      }
    }
    a.passed = n > 0 && worst <= 1e-4;
    a.detail = fmt::format("{} endpoint rows, max |r_bg - 1| = {:.3e}", n, worst);
    out.push_back(a);

    for (const auto& [label, c] : curves(data["fig1.csv"])) {
      if (label.second * 2 != label.first) continue;
      const double y_min = c.y[argext(c.r_ch, false)];
      const double y_max = c.y[argext(c.r_bg, true)];
      out.push_back({fmt::format("fig1_r_ch_min_near_0.2_N{}", label.first),
                     std::abs(y_min - 0.2) <= 0.1 + 1e-12, fmt::format("argmin y = {:.3f}", y_min)});
      out.push_back({fmt::format("fig1_r_bg_max_near_0.2_N{}", label.first),
                     std::abs(y_max - 0.2) <= 0.1 + 1e-12, fmt::format("argmax y = {:.3f}", y_max)});
    }
  }

  // Minimal loss: r_ch near 1 for phase-only weight and below 1.5 for y >= 0.5.
  {
    Assertion at_one{"m6_r_ch_unity_at_y1", false, ""};
    Assertion below{"m6_r_ch_below_1.5", false, ""};
    double worst_one = 0.0;
    double worst_below = 0.0;
    int n_one = 0;
    int n_below = 0;
    for (const auto& r : data["m6.csv"]) {
      if (r.y == 1.0) {
        worst_one = std::max(worst_one, std::abs(r.r_ch - 1.0));
        ++n_one;
      }
      if (r.y >= 0.5) {
        worst_below = std::max(worst_below, r.r_ch);
        ++n_below;
      }
    }
    at_one.passed = n_one > 0 && worst_one <= 5e-2;
    at_one.detail = fmt::format("max |r_ch - 1| at y = 1: {:.4f}", worst_one);
    below.passed = n_below > 0 && worst_below < 1.5;
    below.detail = fmt::format("max r_ch for y >= 0.5: {:.4f}", worst_below);
    out.push_back(at_one);
    out.push_back(below);
  }

  // Sandwich and factor-two ceiling over every row.
  {
    Assertion s{"sandwich_c_c_ge_c_h_ge_c_q", true, ""};
    Assertion f{"factor_two_ceiling", true, ""};
    std::size_t rows = 0;
    std::size_t failed = 0;
    for (const auto& [name, rs] : data) {
      for (const auto& r : rs) {
        if (std::isnan(r.c_h)) {
          ++failed;
          continue;
        }
        ++rows;
        if (s.passed && !(r.c_c >= r.c_h * (1.0 - 1e-6) && r.c_h >= r.c_q * (1.0 - 1e-6))) {
          s.passed = false;
          s.detail = fmt::format("{} N={} n={} y={}: c_c={} c_h={} c_q={}", name, r.label.N,
                                 r.label.n, r.y, r.c_c, r.c_h, r.c_q);
        }
        if (f.passed && !(r.r_bg >= 1.0 - 1e-6 && r.r_bg <= 2.0 + 1e-6)) {
          f.passed = false;
          f.detail = fmt::format("{} N={} n={} y={}: r_bg={}", name, r.label.N, r.label.n, r.y,
                                 r.r_bg);
        }
      }
    }
    if (s.passed) s.detail = fmt::format("{} rows ({} failed rows skipped)", rows, failed);
    if (f.passed) f.detail = s.detail;
    out.push_back(s);
    out.push_back(f);
  }
  return report;
}

}  // namespace qcompat
