/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "ccrelax/program.hpp"

#include <vector>

namespace ccrelax::detail {

// Small dense solvers used by the certificate checks.

/// min ||A w - b||_2 subject to w_j >= 0 for every j with nonneg[j]; the
/// other components are free. Lawson-Hanson active set with free columns
/// kept permanently in the passive set.
Vector bounded_least_squares(const Matrix& A, const Vector& b,
                             const std::vector<bool>& nonneg);

enum class LpStatus { Optimal, Unbounded, IterationLimit };

struct LpResult {
  LpStatus status = LpStatus::IterationLimit;
  Vector x;
  double objective = 0.0;
};

/// max c'x  s.t.  A x <= b, x >= 0, with b >= 0 (the origin is feasible).
/// Tableau simplex with Bland's rule.
LpResult maximize_lp(const Matrix& A, const Vector& b, const Vector& c);

}  // namespace ccrelax::detail
