/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#include "ccrelax/nlp.hpp"

#include "ccrelax/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <vector>

namespace ccrelax {

MultiplierSet MultiplierSet::zeros(const SmoothProgram& prog) {
  return {Vector::Zero(prog.num_ineq()), Vector::Zero(prog.num_eq()),
          Vector::Zero(prog.dim()), Vector::Zero(prog.dim())};
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::IterationLimit: return "iteration_limit";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::NumericalFailure: return "numerical_failure";
  }
  return "?";
}

void assign_box_multipliers(const SmoothProgram& prog, const Vector& point,
                            const Vector& r, MultiplierSet& mult) {
  (void)point;
  const int n = prog.dim();
  mult.box_lower = Vector::Zero(n);
  mult.box_upper = Vector::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (r[i] > 0.0 && std::isfinite(prog.lower()[i])) {
      mult.box_lower[i] = r[i];
    } else if (r[i] < 0.0 && std::isfinite(prog.upper()[i])) {
      mult.box_upper[i] = -r[i];
    }
  }
}

double kkt_residual(const SmoothProgram& prog, const Vector& point,
                    const MultiplierSet& mult) {
  const int n = prog.dim();
  if (point.size() != n || mult.ineq.size() != prog.num_ineq() ||
      mult.eq.size() != prog.num_eq() || mult.box_lower.size() != n ||
      mult.box_upper.size() != n) {
    throw UsageError("kkt_residual: inconsistent dimensions");
  }
  const ObjectiveEval f = prog.objective(point, true);
  const RowsEval g = prog.ineq(point, true);
  const RowsEval h = prog.eq(point, true);

  Vector station = f.gradient - mult.box_lower + mult.box_upper;
  if (prog.num_ineq() > 0) station += g.jacobian.transpose() * mult.ineq;
  if (prog.num_eq() > 0) station += h.jacobian.transpose() * mult.eq;
  double res = station.lpNorm<Eigen::Infinity>();

  for (int i = 0; i < prog.num_ineq(); ++i) {
    res = std::max(res, g.values[i]);
    res = std::max(res, -mult.ineq[i]);
    res = std::max(res, std::abs(mult.ineq[i] * g.values[i]));
  }
  for (int i = 0; i < prog.num_eq(); ++i) {
    res = std::max(res, std::abs(h.values[i]));
  }
  for (int i = 0; i < n; ++i) {
    const double lo = prog.lower()[i];
    const double up = prog.upper()[i];
    res = std::max(res, -mult.box_lower[i]);
    res = std::max(res, -mult.box_upper[i]);
    if (std::isfinite(lo)) {
      res = std::max(res, lo - point[i]);
      res = std::max(res, std::abs(mult.box_lower[i] * (point[i] - lo)));
    } else {
      res = std::max(res, std::abs(mult.box_lower[i]));
    }
    if (std::isfinite(up)) {
      res = std::max(res, point[i] - up);
      res = std::max(res, std::abs(mult.box_upper[i] * (up - point[i])));
    } else {
      res = std::max(res, std::abs(mult.box_upper[i]));
    }
  }
  return res;
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr int kNonmonotoneMemory = 10;
constexpr double kArmijo = 1e-4;
constexpr double kStepMin = 1e-20;
constexpr double kStallImprovement = 0.9;
constexpr int kStallOuters = 5;
constexpr double kStepMax = 1e20;

// PHR augmented Lagrangian of a program for fixed multipliers and penalty.
class AugmentedLagrangian {
 public:
  AugmentedLagrangian(const SmoothProgram& prog, const Vector& lam,
                      const Vector& mu, double rho)
      : prog_(prog), lam_(lam), mu_(mu), rho_(rho) {}

  double value(const Vector& z) const {
    const double f = prog_.objective(z, false).value;
    double val = f;
    if (prog_.num_ineq() > 0) {
      const Vector g = prog_.ineq(z, false).values;
      const Vector plus = (g + lam_ / rho_).cwiseMax(0.0);
      val += 0.5 * rho_ * plus.squaredNorm() - lam_.squaredNorm() / (2 * rho_);
    }
    if (prog_.num_eq() > 0) {
      const Vector h = prog_.eq(z, false).values;
      val += mu_.dot(h) + 0.5 * rho_ * h.squaredNorm();
    }
    return val;
  }

  // With `penalty_hessian`, also returns the Gauss-Newton part of the
  // penalty curvature, rho (Ja' Ja + Jh' Jh) over the rows in the penalty.
  double value_and_gradient(const Vector& z, Vector& grad,
                            Matrix* penalty_hessian = nullptr) const {
    const ObjectiveEval f = prog_.objective(z, true);
    double val = f.value;
    grad = f.gradient;
    if (penalty_hessian != nullptr) {
      penalty_hessian->setZero(prog_.dim(), prog_.dim());
    }
    if (prog_.num_ineq() > 0) {
      const RowsEval g = prog_.ineq(z, true);
      const Vector plus = (g.values + lam_ / rho_).cwiseMax(0.0);
      val += 0.5 * rho_ * plus.squaredNorm() - lam_.squaredNorm() / (2 * rho_);
      grad.noalias() += g.jacobian.transpose() * (rho_ * plus);
      if (penalty_hessian != nullptr) {
        for (int i = 0; i < plus.size(); ++i) {
          if (plus[i] > 0.0) {
            penalty_hessian->noalias() +=
                rho_ * g.jacobian.row(i).transpose() * g.jacobian.row(i);
          }
        }
      }
    }
    if (prog_.num_eq() > 0) {
      const RowsEval h = prog_.eq(z, true);
      val += mu_.dot(h.values) + 0.5 * rho_ * h.values.squaredNorm();
      grad.noalias() += h.jacobian.transpose() * (mu_ + rho_ * h.values);
      if (penalty_hessian != nullptr) {
        penalty_hessian->noalias() += rho_ * h.jacobian.transpose() * h.jacobian;
      }
    }
    return val;
  }

 private:
  const SmoothProgram& prog_;
  const Vector& lam_;
  const Vector& mu_;
  double rho_;
};

Vector project(const SmoothProgram& prog, const Vector& z) {
  return z.cwiseMax(prog.lower()).cwiseMin(prog.upper());
}

enum class InnerOutcome { Solved, IterationLimit, Stalled, NonFinite };

bool finite_eval(double val, const Vector& grad) {
  return std::isfinite(val) && grad.allFinite();
}

// Spectral projected gradient (Birgin-Martinez-Raydan) on the box.
InnerOutcome spectral_projected_gradient(const SmoothProgram& prog,
                                         const AugmentedLagrangian& al,
                                         Vector& z, double eps, int max_iter,
                                         int& iterations) {
  Vector grad;
  double val = al.value_and_gradient(z, grad);
  if (!finite_eval(val, grad)) return InnerOutcome::NonFinite;

  Vector pg = project(prog, z - grad) - z;
  double pg_norm = pg.lpNorm<Eigen::Infinity>();
  if (pg_norm <= eps) return InnerOutcome::Solved;

  double alpha = std::clamp(1.0 / pg_norm, kStepMin, kStepMax);
  std::deque<double> history{val};
  Vector trial_grad;

  for (int it = 0; it < max_iter; ++it) {
    ++iterations;
    const Vector d = project(prog, z - alpha * grad) - z;
    const double gtd = grad.dot(d);
    const double ref = *std::max_element(history.begin(), history.end());

    double step = 1.0;
    Vector trial = z + d;
    double trial_val = al.value(trial);
    while (!(std::isfinite(trial_val) &&
             trial_val <= ref + kArmijo * step * gtd)) {
      double next = 0.5 * step;
      if (std::isfinite(trial_val)) {
        const double denom = trial_val - val - step * gtd;
        if (denom > 0.0) {
          const double q = -0.5 * step * step * gtd / denom;
          if (q >= 0.1 * step && q <= 0.9 * step) next = q;
        }
      }
      step = next;
      if (step < 1e-16) return InnerOutcome::Stalled;
      trial = z + step * d;
      trial_val = al.value(trial);
    }

    trial_val = al.value_and_gradient(trial, trial_grad);
    if (!finite_eval(trial_val, trial_grad)) return InnerOutcome::NonFinite;
    const Vector s = trial - z;
    const Vector yv = trial_grad - grad;
    const double sty = s.dot(yv);
    alpha = sty > 0.0 ? std::clamp(s.squaredNorm() / sty, kStepMin, kStepMax)
                      : kStepMax;

    z = trial;
    grad = trial_grad;
    val = trial_val;
    history.push_back(val);
    if (static_cast<int>(history.size()) > kNonmonotoneMemory) {
      history.pop_front();
    }

    pg = project(prog, z - grad) - z;
    if (pg.lpNorm<Eigen::Infinity>() <= eps) return InnerOutcome::Solved;
  }
  return InnerOutcome::IterationLimit;
}

// Two-metric projected quasi-Newton (Bertsekas): variables that sit on a
// bound with the gradient pushing outward are moved by a scaled gradient
// step, the free ones by a Newton-like step on the model B + P, where P is
// the Gauss-Newton penalty curvature and B a damped BFGS approximation of
// the remaining curvature (structured secant). The trial point is
// projected back onto the box. Falls back to spectral projected gradient
// when the model stops producing descent.
InnerOutcome minimize_on_box(const SmoothProgram& prog,
                             const AugmentedLagrangian& al, Vector& z,
                             double eps, int max_iter, int& iterations) {
  const int n = prog.dim();
  const int first_iteration = iterations;
  Vector grad;
  Matrix penalty;
  double val = al.value_and_gradient(z, grad, &penalty);
  if (!finite_eval(val, grad)) return InnerOutcome::NonFinite;

  Matrix bfgs = Matrix::Identity(n, n);
  bool scaled = false;
  int failures = 0;
  Vector trial_grad;
  Matrix trial_penalty;
  std::vector<int> free_idx;
  free_idx.reserve(n);

  auto reset = [&] {
    bfgs = Matrix::Identity(n, n);
    scaled = false;
  };

  for (int it = 0; it < max_iter; ++it) {
    const Vector pg = project(prog, z - grad) - z;
    const double pg_norm = pg.lpNorm<Eigen::Infinity>();
    if (pg_norm <= eps) return InnerOutcome::Solved;
    ++iterations;

    // Binding set with an epsilon margin around the bounds.
    const double margin = std::min(1e-3, pg_norm);
    free_idx.clear();
    Vector d = Vector::Zero(n);
    for (int i = 0; i < n; ++i) {
      const bool at_lower = z[i] <= prog.lower()[i] + margin && grad[i] > 0.0;
      const bool at_upper = z[i] >= prog.upper()[i] - margin && grad[i] < 0.0;
      if (at_lower || at_upper) {
        d[i] = -grad[i] / (bfgs(i, i) + penalty(i, i));
      } else {
        free_idx.push_back(i);
      }
    }
    if (!free_idx.empty()) {
      const int nf = static_cast<int>(free_idx.size());
      Matrix hff(nf, nf);
      Vector gf(nf);
      for (int a = 0; a < nf; ++a) {
        gf[a] = grad[free_idx[a]];
        for (int b = 0; b < nf; ++b) {
          hff(a, b) = bfgs(free_idx[a], free_idx[b]) + penalty(free_idx[a], free_idx[b]);
        }
      }
      Eigen::LLT<Matrix> llt(hff);
      if (llt.info() != Eigen::Success) {
        reset();
        if (++failures > 3) break;
        continue;
      }
      const Vector df = -llt.solve(gf);
      for (int a = 0; a < nf; ++a) d[free_idx[a]] = df[a];
    }

    double step = 1.0;
    Vector trial = project(prog, z + d);
    double decrease = grad.dot(trial - z);
    if (!(decrease < 0.0)) {
      reset();
      if (++failures > 3) break;
      continue;
    }
    double trial_val = al.value(trial);
    bool accepted = true;
    while (!(std::isfinite(trial_val) &&
             trial_val <= val + kArmijo * grad.dot(trial - z))) {
      step *= 0.5;
      if (step < 1e-12) {
        accepted = false;
        break;
      }
      trial = project(prog, z + step * d);
      trial_val = al.value(trial);
    }
    if (!accepted) {
      reset();
      if (++failures > 3) break;
      continue;
    }
    failures = 0;

    trial_val = al.value_and_gradient(trial, trial_grad, &trial_penalty);
    if (!finite_eval(trial_val, trial_grad)) return InnerOutcome::NonFinite;
    const Vector s = trial - z;
    const Vector yv = trial_grad - grad - trial_penalty * s;
    if (!scaled) {
      const double sty = s.dot(yv);
      if (sty > 0.0) {
        bfgs = Matrix::Identity(n, n) * (yv.squaredNorm() / sty);
      } else {
        bfgs = Matrix::Identity(n, n) * 1e-4;
      }
      scaled = true;
    }
    // Powell-damped BFGS update keeps the approximation positive definite.
    const Vector bs = bfgs * s;
    const double sbs = s.dot(bs);
    if (sbs > 0.0) {
      const double sty = s.dot(yv);
      const double theta =
          sty >= 0.2 * sbs ? 1.0 : 0.8 * sbs / (sbs - sty);
      const Vector r = theta * yv + (1.0 - theta) * bs;
      const double str = s.dot(r);
      if (str > 0.0) {
        bfgs.noalias() -= (bs * bs.transpose()) / sbs;
        bfgs.noalias() += (r * r.transpose()) / str;
      }
    }
    z = trial;
    grad = trial_grad;
    penalty = trial_penalty;
    val = trial_val;
  }

  const int remaining = std::max(0, max_iter - (iterations - first_iteration));
  if (remaining == 0) return InnerOutcome::IterationLimit;
  return spectral_projected_gradient(prog, al, z, eps, remaining, iterations);
}

}  // namespace

SolveReport solve(const SmoothProgram& prog, const Vector& x0,
                  const SolverOptions& opts, const MultiplierSet* warm) {
  const auto start = Clock::now();
  if (x0.size() != prog.dim()) {
    throw UsageError("solve: start vector has wrong length");
  }
  if (!(opts.tol_kkt > 0.0) || !(opts.tol_feas > 0.0) || opts.max_inner < 1 ||
      opts.max_outer < 1 || !(opts.rho_init > 0.0) ||
      !(opts.rho_factor > 1.0)) {
    throw UsageError("solve: invalid solver options");
  }
  const int m = prog.num_ineq();
  const int p = prog.num_eq();

  SolveReport report;
  Vector z = project(prog, x0);
  Vector lam = Vector::Zero(m);
  Vector mu = Vector::Zero(p);
  if (warm != nullptr) {
    if (warm->ineq.size() == m) lam = warm->ineq.cwiseMax(0.0);
    if (warm->eq.size() == p) mu = warm->eq;
  }
  double rho = opts.rho_init;
  double eps = std::max(0.5 * opts.tol_kkt, 1e-2);
  double prev_measure = std::numeric_limits<double>::infinity();
  int stagnant = 0;

  // Best iterate by max(kkt, violation), tracked once eps is at its floor.
  const double eps_floor = 0.5 * opts.tol_kkt;
  double best_merit = std::numeric_limits<double>::infinity();
  SolveReport best;
  Vector best_z;
  int since_best = 0;

  auto finish = [&](SolveStatus status) {
    report.point = z;
    report.status = status;
    report.wall_time =
        std::chrono::duration<double>(Clock::now() - start).count();
    return report;
  };

  for (int outer = 0; outer < opts.max_outer; ++outer) {
    report.outer_iterations = outer + 1;
    AugmentedLagrangian al(prog, lam, mu, rho);
    const int iterations_before = report.iterations;
    const InnerOutcome inner =
        minimize_on_box(prog, al, z, eps, opts.max_inner, report.iterations);
    if (inner == InnerOutcome::NonFinite) {
      report.multipliers = MultiplierSet{lam, mu, Vector::Zero(prog.dim()),
                                         Vector::Zero(prog.dim())};
      return finish(SolveStatus::NumericalFailure);
    }

    const ObjectiveEval f = prog.objective(z, true);
    const RowsEval g = prog.ineq(z, true);
    const RowsEval h = prog.eq(z, true);
    if (!std::isfinite(f.value) || !g.values.allFinite() ||
        !h.values.allFinite()) {
      return finish(SolveStatus::NumericalFailure);
    }

    // Violation measure of the PHR method: |h| and |min(-g, lam/rho)|.
    double measure = p > 0 ? h.values.lpNorm<Eigen::Infinity>() : 0.0;
    for (int i = 0; i < m; ++i) {
      measure = std::max(measure, std::abs(std::min(-g.values[i], lam[i] / rho)));
    }

    lam = (lam + rho * g.values).cwiseMax(0.0);
    mu += rho * h.values;

    Vector r = f.gradient;
    if (m > 0) r.noalias() += g.jacobian.transpose() * lam;
    if (p > 0) r.noalias() += h.jacobian.transpose() * mu;
    MultiplierSet mult{lam, mu, {}, {}};
    assign_box_multipliers(prog, z, r, mult);

    report.multipliers = mult;
    report.objective = f.value;
    report.kkt_residual = kkt_residual(prog, z, mult);
    report.violation = prog.constraint_violation(z);

    if (report.violation <= opts.tol_feas &&
        report.kkt_residual <= opts.tol_kkt) {
      return finish(SolveStatus::Converged);
    }

    const double merit = std::max(report.kkt_residual, report.violation);
    if (merit < kStallImprovement * best_merit) {
      best_merit = merit;
      best = report;
      best_z = z;
      since_best = 0;
    } else if (eps <= eps_floor && best.violation <= opts.tol_kkt &&
               ++since_best >= kStallOuters) {
      break;
    }

    if (measure > opts.tol_feas && measure > opts.violation_decrease * prev_measure) {
      if (rho >= opts.rho_max) {
        ++stagnant;
      }
      rho = std::min(rho * opts.rho_factor, opts.rho_max);
    } else {
      stagnant = 0;
    }
    prev_measure = measure;
    if (stagnant >= 3 && report.violation > opts.tol_feas) break;
    if (report.iterations == iterations_before) {
      // A near bound caps the projected gradient below eps.
      eps = std::max(1e-3 * opts.tol_feas, 0.1 * eps);
    } else {
      eps = std::max(eps_floor, 0.1 * eps);
    }
  }
  if (best_z.size() == z.size() &&
      best_merit < std::max(report.kkt_residual, report.violation)) {
    const int iterations = report.iterations;
    const int outers = report.outer_iterations;
    report = best;
    report.iterations = iterations;
    report.outer_iterations = outers;
    z = best_z;
  }
  return finish(report.violation > opts.tol_kkt ? SolveStatus::Infeasible
                                                : SolveStatus::IterationLimit);
}

}  // namespace ccrelax
