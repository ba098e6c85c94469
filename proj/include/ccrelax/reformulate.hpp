/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "ccrelax/program.hpp"

namespace ccrelax {

// Continuous reformulation of  min f(x) s.t. g <= 0, h = 0, ||x||_0 <= kappa
// over the joint variable z = (x, y) in R^{2n}:
//
//   min f(x)  s.t.  g(x) <= 0, h(x) = 0, 0 <= y <= e, x o y = 0,
//                   n - kappa - e'y <= 0.
//
// All generated programs share one row layout so multipliers can be read
// back by position:
//   ineq rows: [ g (m) | complementarity rows | cardinality row ]
//   eq rows:   [ h (p) | x_i y_i = 0 (continuous reformulation only) ]
// For the regularized programs the complementarity block holds the n
// "upper" rows followed, when nonneg_x is false, by the n "lower" rows.

struct IteratePair {
  Vector x;
  Vector y;

  IteratePair() = default;
  IteratePair(Vector x_, Vector y_);

  int n() const { return static_cast<int>(x.size()); }
  Vector joined() const;
  static IteratePair split(const Vector& z);
};

/// Reformulation feasibility at tolerance eps: 0 <= y <= e, e'y >= n-kappa-eps,
/// the original program's constraints (including its box) hold to eps and
/// ||x o y||_inf <= eps.
bool reformulation_feasible(const SmoothProgram& prog, int kappa,
                            const IteratePair& pair, double eps);

enum class Regularization { Scholtes, KanzowSchwartz };

struct RegularizationKind {
  Regularization variant = Regularization::Scholtes;
  /// The program carries x >= 0, so only the upper complementarity rows are
  /// needed.
  bool nonneg_x = true;
};

SmoothProgram continuous_reformulation(const SmoothProgram& prog, int kappa);

/// Scholtes relaxation NLP(t): x_i y_i - t <= 0 and, unless nonneg_x,
/// -t - x_i y_i <= 0.
SmoothProgram scholtes_program(const SmoothProgram& prog, int kappa, double t,
                               bool nonneg_x);

/// Kanzow-Schwartz relaxation: phi(x_i, y_i; t) <= 0 and, unless nonneg_x,
/// phi(-x_i, y_i; t) <= 0.
SmoothProgram kanzow_schwartz_program(const SmoothProgram& prog, int kappa,
                                      double t, bool nonneg_x);

SmoothProgram regularized_program(const SmoothProgram& prog, int kappa,
                                  double t, const RegularizationKind& kind);

struct PhiEval {
  double value;
  double da;  // d phi / d a
  double db;  // d phi / d b
};

/// Piecewise C^1 function with phi(a, b; t) <= 0  <=>  min{a, b} <= t (t >= 0):
///   (a - t)(b - t)                    if a + b >= 2t
///   -((a - t)^2 + (b - t)^2) / 2      otherwise
PhiEval phi(double a, double b, double t);

/// Certificate y for a sparse x: y_i = 1 where |x_i| <= tol, else 0.
/// Throws InfeasibleError when more than kappa components exceed tol.
Vector recover_y(const Vector& x, int kappa, double tol);

/// Number of complementarity rows in the regularized programs.
inline int complementarity_rows(int n, bool nonneg_x) {
  return nonneg_x ? n : 2 * n;
}

}  // namespace ccrelax
