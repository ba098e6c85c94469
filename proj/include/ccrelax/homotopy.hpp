/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "ccrelax/nlp.hpp"
#include "ccrelax/reformulate.hpp"

#include <string_view>
#include <vector>

namespace ccrelax {

enum class StartY { Ones, Zeros };

struct HomotopySchedule {
  double t0 = 1.0;
  double shrink = 0.01;
  double tol_comp = 1e-6;
  double t_floor = 1e-8;
  RegularizationKind method{};
  StartY y0_mode = StartY::Ones;

  /// Throws UsageError unless 0 < shrink < 1, t0 > t_floor > 0, tol_comp > 0.
  void validate() const;
};

enum class HomotopyStatus { Converged, FloorReached, InnerFailure };

std::string_view to_string(HomotopyStatus status);

/// One regularized solve of the path.
struct HomotopyStep {
  double t = 0.0;
  SolveStatus status = SolveStatus::NumericalFailure;
  double objective = 0.0;
  double kkt_residual = 0.0;
  double complementarity = 0.0;  // ||x o y||_inf of the inner solution
  int iterations = 0;
  double wall_time = 0.0;
  Vector point;                  // inner solution (x, y)
};

struct HomotopyResult {
  IteratePair pair;
  MultiplierSet multipliers;     // of the last accepted regularized solve
  double objective = 0.0;
  int outer_steps = 0;
  std::vector<HomotopyStep> per_step;
  HomotopyStatus status = HomotopyStatus::InnerFailure;
  bool feasible_for_reformulation = false;
  double wall_time = 0.0;
};

/// Regularization path: solve NLP(t_k) for t_k = t0 * shrink^k, each solve
/// warm-started from the previous pair and multipliers. Stops when
/// ||x o y||_inf <= tol_comp (Converged) or when the next t would drop below
/// t_floor (FloorReached). An inner Infeasible/NumericalFailure ends the run
/// with InnerFailure, keeping the last accepted pair.
HomotopyResult run_homotopy(const SmoothProgram& prog, int kappa,
                            const HomotopySchedule& schedule, const Vector& x0,
                            const SolverOptions& inner = {});

/// Single solve of the unregularized continuous reformulation from
/// (x0, y0); the "direct" method. Reported as a one-step path with t = 0.
HomotopyResult run_direct(const SmoothProgram& prog, int kappa, StartY y0_mode,
                          const Vector& x0, double tol_comp = 1e-6,
                          const SolverOptions& inner = {});

struct PolishResult {
  Vector x;
  bool restricted_solved = false;  // false: thresholded input returned
  std::vector<int> support;
};

/// Keeps the (at most kappa) largest-magnitude components above tol (ties:
/// lower index), pins the rest to zero and re-solves the restricted program
/// from that thresholded point. The re-solve is kept only if it converges
/// and, when the thresholded point is itself feasible, lowers the objective
/// by more than 1e-8; otherwise the thresholded point is returned.
PolishResult polish(const SmoothProgram& prog, int kappa,
                    const IteratePair& pair, double tol,
                    const SolverOptions& inner = {});

}  // namespace ccrelax
