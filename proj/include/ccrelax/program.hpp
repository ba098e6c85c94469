/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <Eigen/Dense>

#include <functional>
#include <memory>

namespace ccrelax {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct ObjectiveEval {
  double value = 0.0;
  Vector gradient;  // empty unless derivatives were requested
};

struct RowsEval {
  Vector values;
  Matrix jacobian;  // rows x dim, empty unless derivatives were requested
};

using ObjectiveFn = std::function<ObjectiveEval(const Vector&, bool)>;
using RowsFn = std::function<RowsEval(const Vector&, bool)>;

/// Smooth nonlinear program
///
///   min f(z)  s.t.  g(z) <= 0 (m rows),  h(z) = 0 (p rows),  lower <= z <= upper.
///
/// Evaluators take (z, with_derivatives) and must be pure functions of z.
/// Infinite bounds mean "unbounded". Instances are immutable and cheap to
/// copy; evaluator state is shared.
class SmoothProgram {
 public:
  SmoothProgram(int dim, ObjectiveFn objective, int m, RowsFn ineq, int p,
                RowsFn eq, Vector lower, Vector upper);

  /// Unconstrained program with unbounded box.
  static SmoothProgram unconstrained(int dim, ObjectiveFn objective);

  int dim() const { return dim_; }
  int num_ineq() const { return m_; }
  int num_eq() const { return p_; }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  bool has_box() const;

  ObjectiveEval objective(const Vector& z, bool with_derivatives = true) const;
  RowsEval ineq(const Vector& z, bool with_derivatives = true) const;
  RowsEval eq(const Vector& z, bool with_derivatives = true) const;

  /// Same evaluators, different box.
  SmoothProgram with_bounds(Vector lower, Vector upper) const;

  /// Adds rows to the program (appended after the existing ones).
  SmoothProgram with_extra_ineq(int rows, RowsFn fn) const;
  SmoothProgram with_extra_eq(int rows, RowsFn fn) const;

  /// Every finite bound becomes an explicit inequality row: first the
  /// lower rows (l_i - z_i <= 0) in index order, then the upper rows
  /// (z_i - u_i <= 0). The returned program has an unbounded box.
  SmoothProgram bounds_as_rows() const;

  /// Largest violation of g <= 0, h = 0 and the box at z.
  double constraint_violation(const Vector& z) const;

 private:
  int dim_;
  int m_;
  int p_;
  ObjectiveFn objective_;
  RowsFn ineq_;
  RowsFn eq_;
  Vector lower_;
  Vector upper_;
};

/// Evaluator for a program without rows of that kind.
RowsFn no_rows(int dim);

}  // namespace ccrelax
