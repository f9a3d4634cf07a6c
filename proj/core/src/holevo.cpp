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


#include "qcompat/holevo.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <fmt/format.h>

#include "qcompat/errors.hpp"

namespace qcompat {

namespace {

using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;

const Eigen::Matrix2d kJ = (Eigen::Matrix2d() << 0.0, 1.0, -1.0, 0.0).finished();
const Vec4 kTarget(1.0, 0.0, 0.0, 1.0);

Mat4 symmetric_pinv(const Mat4& m, double rcond) {
  Eigen::SelfAdjointEigenSolver<Mat4> eig(m);
  const double top = eig.eigenvalues().cwiseAbs().maxCoeff();
  Vec4 inv = Vec4::Zero();
  for (int i = 0; i < 4; ++i) {
    const double e = eig.eigenvalues()(i);
    if (top > 0.0 && std::abs(e) > rcond * top) inv(i) = 1.0 / e;
  }
  return eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
}

// One pair (a <= b) of eigen-indices. Off-diagonal pairs carry the complex
// entries (X_j)_ab as (Re u_1, Re u_2, Im u_1, Im u_2); diagonal pairs carry
// the real entries (X_1)_aa, (X_2)_aa.
struct PairBlock {
  Eigen::Index a;
  Eigen::Index b;
  double lam_a;
  double lam_b;
  Eigen::MatrixXd A;  // 4 x (2 or 4) constraint coefficients
};

struct BlockSolve {
  Eigen::MatrixXd q_pinv;
  Eigen::MatrixXd null_basis;
};

struct InnerSolution {
  double value = 0.0;
  Mat4 P;
  Vec4 nu;
  Mat4 K;
  std::vector<BlockSolve> parts;
};

class DualProblem {
 public:
  DualProblem(const ProjectedModel& model, const Eigen::Matrix2d& w) : w_(w), rho_(model.rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(model.rho);
    lam_ = eig.eigenvalues().cwiseMax(0.0);
    u_ = eig.eigenvectors();
    const std::array<Eigen::MatrixXcd, 2> d = {u_.adjoint() * model.d_rho[0] * u_,
                                               u_.adjoint() * model.d_rho[1] * u_};
    const Eigen::Index n = lam_.size();
    const double tol = 1e-12 * lam_.maxCoeff();
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = a; b < n; ++b) {
        if (lam_(a) + lam_(b) <= tol) continue;
        PairBlock blk{a, b, lam_(a), lam_(b), {}};
        if (a == b) {
          blk.A = Eigen::MatrixXd::Zero(4, 2);
          for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) blk.A(2 * i + j, j) = d[static_cast<std::size_t>(i)](a, a).real();
          }
        } else {
          blk.A = Eigen::MatrixXd::Zero(4, 4);
          for (int i = 0; i < 2; ++i) {
            const cplx z = d[static_cast<std::size_t>(i)](b, a);
            for (int j = 0; j < 2; ++j) {
              blk.A(2 * i + j, j) = 2.0 * z.real();
              blk.A(2 * i + j, 2 + j) = -2.0 * z.imag();
            }
          }
        }
        blocks_.push_back(std::move(blk));
      }
    }
  }

  double half_width() const { return std::sqrt(std::max(w_.determinant(), 0.0)); }

  InnerSolution solve(double t) const {
    InnerSolution out;
    Mat4 S = Mat4::Zero();
    out.K = Mat4::Zero();
    const double lam_scale = std::max(w_.cwiseAbs().maxCoeff() + std::abs(t), 1e-300);
    out.parts.reserve(blocks_.size());
    for (const PairBlock& blk : blocks_) {
      Eigen::MatrixXd Q;
      if (blk.a == blk.b) {
        Q = blk.lam_a * w_;
      } else {
        const Eigen::Matrix2d hr = (blk.lam_a + blk.lam_b) * w_;
        const Eigen::Matrix2d hi = t * (blk.lam_a - blk.lam_b) * kJ;
        Q.resize(4, 4);
        Q << hr, -hi, hi, hr;
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Q);
      const double cut = 1e-12 * (blk.lam_a + blk.lam_b) * lam_scale;
      const Eigen::Index m = Q.rows();
      std::vector<Eigen::Index> range;
      std::vector<Eigen::Index> null;
      for (Eigen::Index i = 0; i < m; ++i) {
        (eig.eigenvalues()(i) > cut ? range : null).push_back(i);
      }
      BlockSolve part;
      part.q_pinv = Eigen::MatrixXd::Zero(m, m);
      for (Eigen::Index i : range) {
        const Eigen::VectorXd v = eig.eigenvectors().col(i);
        part.q_pinv += v * v.transpose() / eig.eigenvalues()(i);
      }
      part.null_basis.resize(m, static_cast<Eigen::Index>(null.size()));
      for (std::size_t k = 0; k < null.size(); ++k) {
        part.null_basis.col(static_cast<Eigen::Index>(k)) = eig.eigenvectors().col(null[k]);
      }
      S += blk.A * part.q_pinv * blk.A.transpose();
      if (!null.empty()) {
        const Eigen::MatrixXd nn = blk.A * part.null_basis;
        out.K += nn * nn.transpose();
      }
      out.parts.push_back(std::move(part));
    }
    // Constraint directions reachable through zero-cost variables are free:
    // project them out of the target before solving the reduced system.
    Eigen::SelfAdjointEigenSolver<Mat4> keig(out.K);
    const double kcut = 1e-12 * std::max(keig.eigenvalues().maxCoeff(), 1.0);
    out.P = Mat4::Zero();
    for (int i = 0; i < 4; ++i) {
      if (keig.eigenvalues()(i) <= kcut) {
        out.P += keig.eigenvectors().col(i) * keig.eigenvectors().col(i).transpose();
      }
    }
    const Vec4 pc = out.P * kTarget;
    out.nu = symmetric_pinv(out.P * S * out.P, 1e-13) * pc;
    out.value = pc.dot(out.nu);
    return out;
  }

  // Half the slope of the dual function at t: Im Z_12 of the inner minimizer.
  double half_slope(double t) const {
    const auto X = primal(t);
    return ((rho_ * X[0]) * X[1]).trace().imag();
  }

  // Minimizer of the inner problem at multiplier t, in the reduced basis.
  std::array<Eigen::MatrixXcd, 2> primal(double t) const {
    const InnerSolution sol = solve(t);
    const Eigen::Index n = lam_.size();
    std::array<Eigen::MatrixXcd, 2> X = {Eigen::MatrixXcd::Zero(n, n),
                                         Eigen::MatrixXcd::Zero(n, n)};
    Vec4 residual = kTarget;
    std::vector<Eigen::VectorXd> values;
    values.reserve(blocks_.size());
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      Eigen::VectorXd v = sol.parts[k].q_pinv * blocks_[k].A.transpose() * sol.P * sol.nu;
      residual -= blocks_[k].A * v;
      values.push_back(std::move(v));
    }
    // Whatever the range part leaves unsatisfied is met by the minimum-norm
    // combination of zero-cost directions.
    const Mat4 k_pinv = symmetric_pinv(sol.K, 1e-12);
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      const PairBlock& blk = blocks_[k];
      Eigen::VectorXd v = values[k];
      const Eigen::MatrixXd& nb = sol.parts[k].null_basis;
      if (nb.cols() > 0) v += nb * (blk.A * nb).transpose() * k_pinv * residual;
      for (std::size_t j = 0; j < 2; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        if (blk.a == blk.b) {
          X[j](blk.a, blk.a) = v(jj);
        } else {
          X[j](blk.a, blk.b) = cplx(v(jj), v(2 + jj));
          X[j](blk.b, blk.a) = cplx(v(jj), -v(2 + jj));
        }
      }
    }
    for (auto& x : X) x = u_ * x * u_.adjoint();
    return X;
  }

 private:
  Eigen::Matrix2d w_;
  Eigen::MatrixXcd rho_;
  Eigen::VectorXd lam_;
  Eigen::MatrixXcd u_;
  std::vector<PairBlock> blocks_;
};

Eigen::Matrix2d psd_sqrt(const Eigen::Matrix2d& w) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(w);
  return eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
         eig.eigenvectors().transpose();
}

double reform_value(const Eigen::Matrix2cd& z, const Eigen::Matrix2d& w) {
  const Eigen::Matrix2d sw = psd_sqrt(w);
  const Eigen::Matrix2d m = sw * z.imag() * sw;
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(m);
  return (w * z.real()).trace() + svd.singularValues().sum();
}

// Smallest V with V >= Z for a real antisymmetric Im Z: adds |Im Z_12| times a
// matrix whose determinant matches. For a singular W the optimum is not
// attained, so a vanishing regularization along the null direction is used.
Eigen::Matrix2d optimal_v(const Eigen::Matrix2cd& z, const Eigen::Matrix2d& w) {
  const Eigen::Matrix2d re = 0.5 * (z.real() + z.real().transpose());
  const double im = 0.5 * (z(0, 1).imag() - z(1, 0).imag());
  const double det = w.determinant();
  if (im == 0.0) return re;
  const double scale = std::max(w.trace(), 1e-300);
  if (det > 1e-14 * scale * scale) {
    return re + std::abs(im) * std::sqrt(det) * w.inverse();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(w);
  const Eigen::Vector2d e_null = eig.eigenvectors().col(0);
  const Eigen::Vector2d e_top = eig.eigenvectors().col(1);
  const double eps = 1e-12 * std::max(re.trace(), 1e-300);
  return re + eps * e_top * e_top.transpose() + (im * im / eps) * e_null * e_null.transpose();
}

// Near the ends of the multiplier interval the recovered primal misses the
// constraints by roundoff. Adds the smallest correction in the span of the
// derivatives that meets them exactly.
void restore_unbiasedness(const std::array<Eigen::MatrixXcd, 2>& d_rho,
                          std::array<Eigen::MatrixXcd, 2>& X) {
  Eigen::Matrix2d gram;
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index k = 0; k < 2; ++k) {
      gram(i, k) = (d_rho[static_cast<std::size_t>(i)] * d_rho[static_cast<std::size_t>(k)])
                       .trace()
                       .real();
    }
  }
  const Eigen::Matrix2d g_inv = gram.completeOrthogonalDecomposition().pseudoInverse();
  for (std::size_t j = 0; j < 2; ++j) {
    Eigen::Vector2d r;
    for (std::size_t i = 0; i < 2; ++i) {
      r(static_cast<Eigen::Index>(i)) = (i == j ? 1.0 : 0.0) - (d_rho[i] * X[j]).trace().real();
    }
    const Eigen::Vector2d alpha = g_inv * r;
    X[j] += alpha(0) * d_rho[0] + alpha(1) * d_rho[1];
  }
}

bool derivatives_degenerate(const ProbeOutput& output, double tol) {
  const Eigen::Index d2 = output.rho.size();
  Eigen::MatrixXcd stacked(d2, 2);
  stacked.col(0) = output.d_rho[0].reshaped();
  stacked.col(1) = output.d_rho[1].reshaped();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked);
  return svd.singularValues()(1) < tol;
}

}  // namespace

std::string_view solver_status_name(SolverStatus s) noexcept {
  return s == SolverStatus::optimal ? "optimal" : "inaccurate";
}

ProjectedModel support_project(const ProbeOutput& output, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(output.rho);
  const Eigen::Index d = output.rho.rows();
  const double cut = tol * eig.eigenvalues().maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = d - 1; i >= 0; --i) {
    if (eig.eigenvalues()(i) > cut) keep.push_back(i);
  }
  Eigen::MatrixXcd support(d, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    support.col(static_cast<Eigen::Index>(k)) = eig.eigenvectors().col(keep[k]);
  }

  // Columns of the derivatives that leave the support.
  Eigen::MatrixXcd outside(d, 2 * d);
  const Eigen::MatrixXcd complement =
      Eigen::MatrixXcd::Identity(d, d) - support * support.adjoint();
  outside << complement * output.d_rho[0], complement * output.d_rho[1];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(outside, Eigen::ComputeThinU);
  const double top = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  Eigen::Index extra = 0;
  const double dtop = std::max(output.d_rho[0].norm(), output.d_rho[1].norm());
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > 1e-10 * std::max(top, dtop) && top > 0.0) ++extra;
  }

  ProjectedModel m;
  m.support_rank = static_cast<int>(keep.size());
  m.isometry.resize(d, support.cols() + extra);
  m.isometry << support, svd.matrixU().leftCols(extra);
  m.retained_dim = static_cast<int>(m.isometry.cols());
  const Eigen::MatrixXcd vd = m.isometry.adjoint();
  m.rho = vd * output.rho * m.isometry;
  m.d_rho = {vd * output.d_rho[0] * m.isometry, vd * output.d_rho[1] * m.isometry};
  return m;
}

Eigen::Matrix2cd z_matrix(const Eigen::MatrixXcd& rho, const std::array<Eigen::MatrixXcd, 2>& X) {
  Eigen::Matrix2cd z;
  for (std::size_t i = 0; i < 2; ++i) {
    const Eigen::MatrixXcd rx = rho * X[i];
    for (std::size_t j = 0; j < 2; ++j) {
      z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (rx * X[j]).trace();
    }
  }
  return z;
}

double unbiasedness_residual(const std::array<Eigen::MatrixXcd, 2>& d_rho,
                             const std::array<Eigen::MatrixXcd, 2>& X) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const double target = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs((d_rho[i] * X[j]).trace() - target));
    }
  }
  return worst;
}

double reform_objective(const ProbeOutput& output, const WeightMatrix& w,
                        const std::array<Eigen::MatrixXcd, 2>& X, double unbiasedness_tol) {
  const double res = unbiasedness_residual(output.d_rho, X);
  if (!(res <= unbiasedness_tol)) {
    throw ContractError(
        fmt::format("X violates local unbiasedness (residual {:.3e} > {:.1e})", res,
                    unbiasedness_tol));
  }
  return reform_value(z_matrix(output.rho, X), w.entries);
}

HolevoSolution hcrb(const ProbeOutput& output, const WeightMatrix& w, const HolevoOptions& options) {
  if (derivatives_degenerate(output, options.degenerate_tol)) {
    throw DegenerateModelError("derivative matrices are linearly dependent");
  }
  const ProjectedModel model = support_project(output, options.support_tol);
  const Eigen::Matrix2d W = 0.5 * (w.entries + w.entries.transpose());
  const DualProblem dual(model, W);

  // The dual function is concave in t on [-s, s].
  const double s = dual.half_width();
  double t_best = 0.0;
  double g_best = dual.solve(0.0).value;
  if (s > 0.0) {
    std::uintmax_t iterations = 200;
    const auto r = boost::math::tools::brent_find_minima(
        [&](double t) { return -dual.solve(t).value; }, -s, s,
        std::numeric_limits<double>::digits / 2, iterations);
    // Close to +-s the inner problem is badly conditioned and overshoots, so a
    // maximizer that lands there is replaced by the exact endpoint.
    if (std::abs(r.first) < (1.0 - 1e-6) * s && -r.second > g_best) {
      t_best = r.first;
      g_best = -r.second;
    }
    for (double edge : {-s, s}) {
      const double g = dual.solve(edge).value;
      if (g > g_best) {
        g_best = g;
        t_best = edge;
      }
    }
    // Brent only resolves t to about sqrt(eps). At an interior maximum the
    // slope changes sign, so the root of the slope is polished to full
    // precision.
    const double step = 1e-6 * s;
    const double lo = std::max(-s, t_best - step);
    const double hi = std::min(s, t_best + step);
    if (lo > -s && hi < s) {
      const double f_lo = dual.half_slope(lo);
      const double f_hi = dual.half_slope(hi);
      if (f_lo > 0.0 && f_hi < 0.0) {
        std::uintmax_t iters = 100;
        const auto root = boost::math::tools::toms748_solve(
            [&](double t) { return dual.half_slope(t); }, lo, hi, f_lo, f_hi,
            boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 3),
            iters);
        const double t_root = 0.5 * (root.first + root.second);
        const double g = dual.solve(t_root).value;
        if (g >= g_best - 1e-14 * std::abs(g_best)) {
          g_best = g;
          t_best = t_root;
        }
      }
    }
  }

  // Recover the primal from the optimal multiplier. On the boundary of the
  // multiplier interval the inner problem may have several minimizers, so a
  // few interior multipliers are tried as well and the best primal kept.
  std::vector<double> candidates = {t_best};
  if (s > 0.0 && std::abs(t_best) > (1.0 - 1e-3) * s) {
    for (double shrink : {1e-4, 1e-6, 1e-8, 1e-10}) candidates.push_back(t_best * (1.0 - shrink));
  }
  std::optional<std::array<Eigen::MatrixXcd, 2>> best_x;
  double best_f = std::numeric_limits<double>::infinity();
  double best_res = std::numeric_limits<double>::infinity();
  for (double t : candidates) {
    auto X = dual.primal(t);
    restore_unbiasedness(model.d_rho, X);
    const double res = unbiasedness_residual(model.d_rho, X);
    const double f = reform_value(z_matrix(model.rho, X), W);
    if (res <= options.feasibility_tol && f < best_f) {
      best_f = f;
      best_res = res;
      best_x = std::move(X);
    } else if (!best_x && res < best_res) {
      best_res = res;
    }
  }
  if (!best_x) {
    throw DegenerateModelError(fmt::format(
        "unbiasedness constraints cannot be met (residual {:.3e})", best_res));
  }

  HolevoSolution sol;
  const Eigen::MatrixXcd vd = model.isometry.adjoint();
  for (std::size_t j = 0; j < 2; ++j) sol.X[j] = model.isometry * (*best_x)[j] * vd;
  const Eigen::Matrix2cd z = z_matrix(output.rho, sol.X);
  sol.V = optimal_v(z, W);
  sol.value = (W * sol.V).trace();
  sol.reform_value = reform_objective(output, w, sol.X, 1e-6);
  sol.gap = std::abs(sol.value - sol.reform_value);
  sol.dual_value = g_best;
  sol.multiplier = s > 0.0 ? t_best / s : 0.0;
  sol.retained_dim = model.retained_dim;
  sol.unbiasedness_residual = unbiasedness_residual(output.d_rho, sol.X);
  sol.solver = "lagrangian-dual/brent + block-qp";
  sol.tolerance = options.gap_tol;
  const double scale = std::max(1.0, std::abs(sol.value));
  sol.status = std::abs(sol.value - sol.dual_value) <= options.gap_tol * scale &&
                       sol.unbiasedness_residual <= options.feasibility_tol
                   ? SolverStatus::optimal
                   : SolverStatus::inaccurate;
  return sol;
}

}  // namespace qcompat
