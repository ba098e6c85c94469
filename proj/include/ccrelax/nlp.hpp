/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "ccrelax/program.hpp"

#include <optional>
#include <string_view>

namespace ccrelax {

/// Multipliers for every constraint row of a SmoothProgram, in row order.
/// Stationarity reads
///   grad f + Jg' ineq + Jh' eq - box_lower + box_upper = 0.
struct MultiplierSet {
  Vector ineq;        // >= 0, one per inequality row
  Vector eq;          // free, one per equality row
  Vector box_lower;   // >= 0, one per variable
  Vector box_upper;   // >= 0, one per variable

  static MultiplierSet zeros(const SmoothProgram& prog);
};

enum class SolveStatus { Converged, IterationLimit, Infeasible, NumericalFailure };

std::string_view to_string(SolveStatus status);

struct SolverOptions {
  double tol_kkt = 1e-6;
  double tol_feas = 1e-8;
  int max_inner = 5000;
  int max_outer = 50;
  double rho_init = 10.0;
  double rho_factor = 10.0;
  double rho_max = 1e12;
  /// Penalty grows when the violation fails to shrink by this factor.
  double violation_decrease = 0.25;
};

struct SolveReport {
  Vector point;
  MultiplierSet multipliers;
  double objective = 0.0;
  double kkt_residual = 0.0;
  double violation = 0.0;
  int iterations = 0;        // total inner iterations
  int outer_iterations = 0;
  SolveStatus status = SolveStatus::NumericalFailure;
  double wall_time = 0.0;    // seconds
};

/// Augmented-Lagrangian solve (PHR penalty on g and h, box handled by
/// projection). Inner problems use a two-metric projected quasi-Newton
/// method, falling back to spectral projected gradient with nonmonotone
/// Armijo backtracking. Deterministic for fixed inputs.
///
/// `warm` supplies initial ineq/eq multipliers (box multipliers are ignored).
SolveReport solve(const SmoothProgram& prog, const Vector& x0,
                  const SolverOptions& opts = {},
                  const MultiplierSet* warm = nullptr);

/// Max-norm of the stationarity, feasibility, sign and complementarity
/// violations of (point, mult). Zero exactly at a KKT point.
double kkt_residual(const SmoothProgram& prog, const Vector& point,
                    const MultiplierSet& mult);

/// Box multipliers implied by the Lagrangian gradient r = grad f + Jg'l + Jh'm:
/// the positive part of r_i goes to a finite lower bound, the negative part
/// to a finite upper bound. Residual components stay in the stationarity
/// term when the matching bound is infinite.
void assign_box_multipliers(const SmoothProgram& prog, const Vector& point,
                            const Vector& lagrangian_gradient,
                            MultiplierSet& mult);

}  // namespace ccrelax
