/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#include "dense_lp.hpp"

#include "ccrelax/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ccrelax::detail {

namespace {

// Least squares restricted to the passive columns; other entries zero.
Vector passive_solve(const Matrix& A, const Vector& b,
                     const std::vector<bool>& passive) {
  std::vector<int> cols;
  for (int j = 0; j < static_cast<int>(passive.size()); ++j) {
    if (passive[j]) cols.push_back(j);
  }
  Vector w = Vector::Zero(A.cols());
  if (cols.empty()) return w;
  Matrix sub(A.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) sub.col(k) = A.col(cols[k]);
  const Vector s = sub.completeOrthogonalDecomposition().solve(b);
  for (std::size_t k = 0; k < cols.size(); ++k) w[cols[k]] = s[k];
  return w;
}

}  // namespace

Vector bounded_least_squares(const Matrix& A, const Vector& b,
                             const std::vector<bool>& nonneg) {
  const int n = static_cast<int>(A.cols());
  if (static_cast<int>(nonneg.size()) != n || A.rows() != b.size()) {
    throw UsageError("bounded_least_squares: inconsistent dimensions");
  }
  std::vector<bool> passive(n);
  for (int j = 0; j < n; ++j) passive[j] = !nonneg[j];
  Vector w = passive_solve(A, b, passive);

  const double tol = 10.0 * std::numeric_limits<double>::epsilon() *
                     std::max<double>(1.0, A.cwiseAbs().maxCoeff()) *
                     std::max<Eigen::Index>(A.rows(), A.cols());
  const int max_outer = 3 * n + 10;
  for (int outer = 0; outer < max_outer; ++outer) {
    const Vector grad = A.transpose() * (b - A * w);
    int enter = -1;
    double best = tol;
    for (int j = 0; j < n; ++j) {
      if (nonneg[j] && !passive[j] && grad[j] > best) {
        best = grad[j];
        enter = j;
      }
    }
    if (enter < 0) break;
    passive[enter] = true;

    for (int inner = 0; inner <= n; ++inner) {
      const Vector s = passive_solve(A, b, passive);
      double alpha = 1.0;
      int leaving = -1;
      for (int j = 0; j < n; ++j) {
        if (passive[j] && nonneg[j] && s[j] <= tol) {
          const double denom = w[j] - s[j];
          const double a = denom > 0.0 ? w[j] / denom : 0.0;
          if (a < alpha) {
            alpha = a;
            leaving = j;
          }
        }
      }
      if (leaving < 0) {
        w = s;
        break;
      }
      w += alpha * (s - w);
      for (int j = 0; j < n; ++j) {
        if (passive[j] && nonneg[j] && w[j] <= tol) {
          passive[j] = false;
          w[j] = 0.0;
        }
      }
      // A freshly entered column that leaves at once would cycle.
      if (!passive[enter] && inner == 0) break;
    }
  }
  for (int j = 0; j < n; ++j) {
    if (nonneg[j]) w[j] = std::max(w[j], 0.0);
  }
  return w;
}

LpResult maximize_lp(const Matrix& A, const Vector& b, const Vector& c) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.size() != m || c.size() != n) {
    throw UsageError("maximize_lp: inconsistent dimensions");
  }
  if (m > 0 && b.minCoeff() < 0.0) {
    throw UsageError("maximize_lp: right-hand side must be nonnegative");
  }
  // Tableau: rows 0..m-1 constraints, row m reduced costs; columns
  // 0..n-1 structural, n..n+m-1 slacks, last column rhs.
  const int cols = n + m + 1;
  Matrix T = Matrix::Zero(m + 1, cols);
  T.topLeftCorner(m, n) = A;
  T.block(0, n, m, m).setIdentity();
  T.col(cols - 1).head(m) = b;
  T.row(m).head(n) = -c.transpose();
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  constexpr double kPivotTol = 1e-11;
  const int max_iter = 50 * (m + n) + 100;
  LpResult result;
  for (int iter = 0; iter < max_iter; ++iter) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (T(m, j) < -kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) {
      result.status = LpStatus::Optimal;
      break;
    }
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (T(i, enter) > kPivotTol) {
        const double ratio = T(i, cols - 1) / T(i, enter);
        if (ratio < best_ratio - 1e-14 ||
            (ratio <= best_ratio + 1e-14 && leave >= 0 &&
             basis[i] < basis[leave])) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) {
      result.status = LpStatus::Unbounded;
      return result;
    }
    T.row(leave) /= T(leave, enter);
    for (int i = 0; i <= m; ++i) {
      if (i != leave && T(i, enter) != 0.0) {
        T.row(i) -= T(i, enter) * T.row(leave);
      }
    }
    basis[leave] = enter;
  }
  result.x = Vector::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) result.x[basis[i]] = T(i, cols - 1);
  }
  result.objective = c.dot(result.x);
  return result;
}

}  // namespace ccrelax::detail
