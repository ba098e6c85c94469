/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#include "ccrelax/homotopy.hpp"

#include "ccrelax/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace ccrelax {

void HomotopySchedule::validate() const {
  if (!(shrink > 0.0 && shrink < 1.0)) {
    throw UsageError("schedule: shrink must lie in (0, 1)");
  }
  if (!(t_floor > 0.0) || !(t0 > t_floor) || !std::isfinite(t0)) {
    throw UsageError("schedule: need t0 > t_floor > 0");
  }
  if (!(tol_comp > 0.0)) throw UsageError("schedule: tol_comp must be positive");
}

std::string_view to_string(HomotopyStatus status) {
  switch (status) {
    case HomotopyStatus::Converged: return "converged";
    case HomotopyStatus::FloorReached: return "floor_reached";
    case HomotopyStatus::InnerFailure: return "inner_failure";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

Vector start_point(const Vector& x0, StartY mode) {
  const Eigen::Index n = x0.size();
  Vector z(2 * n);
  z << x0, (mode == StartY::Ones ? Vector::Ones(n) : Vector::Zero(n));
  return z;
}

double complementarity(const Vector& z) {
  const Eigen::Index n = z.size() / 2;
  return z.head(n).cwiseProduct(z.tail(n)).lpNorm<Eigen::Infinity>();
}

HomotopyStep record_step(double t, const SolveReport& r) {
  HomotopyStep step;
  step.t = t;
  step.status = r.status;
  step.objective = r.objective;
  step.kkt_residual = r.kkt_residual;
  step.complementarity = complementarity(r.point);
  step.iterations = r.iterations;
  step.wall_time = r.wall_time;
  step.point = r.point;
  return step;
}

bool hard_failure(SolveStatus s) {
  return s == SolveStatus::Infeasible || s == SolveStatus::NumericalFailure;
}

}  // namespace

HomotopyResult run_homotopy(const SmoothProgram& prog, int kappa,
                            const HomotopySchedule& schedule, const Vector& x0,
                            const SolverOptions& inner) {
  schedule.validate();
  if (x0.size() != prog.dim()) {
    throw UsageError("homotopy: start vector has wrong length");
  }
  const auto start = Clock::now();

  HomotopyResult result;
  Vector z = start_point(x0, schedule.y0_mode);
  MultiplierSet warm;
  bool have_warm = false;
  bool accepted_any = false;
  double t = schedule.t0;

  while (true) {
    const SmoothProgram regularized =
        regularized_program(prog, kappa, t, schedule.method);
    const SolveReport report =
        solve(regularized, z, inner, have_warm ? &warm : nullptr);
    result.per_step.push_back(record_step(t, report));
    result.outer_steps = static_cast<int>(result.per_step.size());

    if (hard_failure(report.status)) {
      if (!accepted_any) {
        z = report.point;
        result.multipliers = report.multipliers;
        result.objective = report.objective;
      }
      result.status = HomotopyStatus::InnerFailure;
      break;
    }

    accepted_any = true;
    z = report.point;
    warm = report.multipliers;
    have_warm = true;
    result.multipliers = report.multipliers;
    result.objective = report.objective;

    if (complementarity(z) <= schedule.tol_comp) {
      result.status = HomotopyStatus::Converged;
      break;
    }
    const double next = schedule.shrink * t;
    if (next < schedule.t_floor) {
      result.status = HomotopyStatus::FloorReached;
      break;
    }
    t = next;
  }

  result.pair = IteratePair::split(z);
  result.feasible_for_reformulation =
      reformulation_feasible(prog, kappa, result.pair, schedule.tol_comp);
  result.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

HomotopyResult run_direct(const SmoothProgram& prog, int kappa, StartY y0_mode,
                          const Vector& x0, double tol_comp,
                          const SolverOptions& inner) {
  if (x0.size() != prog.dim()) {
    throw UsageError("direct: start vector has wrong length");
  }
  if (!(tol_comp > 0.0)) throw UsageError("direct: tol_comp must be positive");
  const auto start = Clock::now();
  const SmoothProgram reform = continuous_reformulation(prog, kappa);
  const SolveReport report = solve(reform, start_point(x0, y0_mode), inner);

  HomotopyResult result;
  result.per_step.push_back(record_step(0.0, report));
  result.outer_steps = 1;
  result.pair = IteratePair::split(report.point);
  result.multipliers = report.multipliers;
  result.objective = report.objective;
  result.status = hard_failure(report.status) ? HomotopyStatus::InnerFailure
                                              : HomotopyStatus::Converged;
  result.feasible_for_reformulation =
      reformulation_feasible(prog, kappa, result.pair, tol_comp);
  if (result.status == HomotopyStatus::Converged &&
      complementarity(report.point) > tol_comp) {
    result.status = HomotopyStatus::InnerFailure;
  }
  result.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

PolishResult polish(const SmoothProgram& prog, int kappa,
                    const IteratePair& pair, double tol,
                    const SolverOptions& inner) {
  const int n = prog.dim();
  if (pair.n() != n) throw UsageError("polish: pair length differs from dim");
  if (kappa < 1) throw UsageError("polish: kappa must be positive");
  if (!(tol > 0.0)) throw UsageError("polish: tol must be positive");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(pair.x[a]) > std::abs(pair.x[b]);
  });
  PolishResult out;
  for (int k = 0; k < n && static_cast<int>(out.support.size()) < kappa; ++k) {
    if (std::abs(pair.x[order[k]]) > tol) out.support.push_back(order[k]);
  }
  std::sort(out.support.begin(), out.support.end());

  Vector thresholded = Vector::Zero(n);
  Vector lower = Vector::Zero(n);
  Vector upper = Vector::Zero(n);
  for (int i : out.support) {
    thresholded[i] = pair.x[i];
    lower[i] = prog.lower()[i];
    upper[i] = prog.upper()[i];
  }
  out.x = thresholded;
  if (out.support.empty()) return out;

  const SmoothProgram restricted = prog.with_bounds(lower, upper);
  const SolveReport report = solve(restricted, thresholded, inner);
  if (report.status != SolveStatus::Converged) return out;

  const double violation = restricted.constraint_violation(thresholded);
  const double f_thresholded = prog.objective(thresholded, false).value;
  if (violation <= inner.tol_feas && report.objective >= f_thresholded - 1e-8) {
    return out;
  }
  out.x = report.point;
  out.restricted_solved = true;
  return out;
}

}  // namespace ccrelax
