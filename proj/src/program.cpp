/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#include "ccrelax/program.hpp"

#include "ccrelax/errors.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace ccrelax {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_rows(const RowsEval& r, int rows, int dim, bool derivs,
                const char* what) {
  if (r.values.size() != rows) {
    throw UsageError(std::string(what) + ": evaluator returned " +
                     std::to_string(r.values.size()) + " values, expected " +
                     std::to_string(rows));
  }
  if (derivs && (r.jacobian.rows() != rows || r.jacobian.cols() != dim)) {
    throw UsageError(std::string(what) + ": jacobian has wrong shape");
  }
}

}  // namespace

RowsFn no_rows(int dim) {
  return [dim](const Vector&, bool derivs) {
    RowsEval r;
    r.values = Vector(0);
    if (derivs) r.jacobian = Matrix(0, dim);
    return r;
  };
}

SmoothProgram::SmoothProgram(int dim, ObjectiveFn objective, int m,
                             RowsFn ineq, int p, RowsFn eq, Vector lower,
                             Vector upper)
    : dim_(dim),
      m_(m),
      p_(p),
      objective_(std::move(objective)),
      ineq_(std::move(ineq)),
      eq_(std::move(eq)),
      lower_(std::move(lower)),
      upper_(std::move(upper)) {
  if (dim_ <= 0) throw UsageError("program dimension must be positive");
  if (m_ < 0 || p_ < 0) throw UsageError("negative row count");
  if (lower_.size() != dim_ || upper_.size() != dim_) {
    throw UsageError("bound vectors must have length dim");
  }
  for (int i = 0; i < dim_; ++i) {
    if (!(lower_[i] <= upper_[i])) {
      throw UsageError("lower bound exceeds upper bound at index " +
                       std::to_string(i));
    }
  }
  if (!ineq_) ineq_ = no_rows(dim_);
  if (!eq_) eq_ = no_rows(dim_);
}

SmoothProgram SmoothProgram::unconstrained(int dim, ObjectiveFn objective) {
  return SmoothProgram(dim, std::move(objective), 0, no_rows(dim), 0,
                       no_rows(dim), Vector::Constant(dim, -kInf),
                       Vector::Constant(dim, kInf));
}

bool SmoothProgram::has_box() const {
  for (int i = 0; i < dim_; ++i) {
    if (std::isfinite(lower_[i]) || std::isfinite(upper_[i])) return true;
  }
  return false;
}

ObjectiveEval SmoothProgram::objective(const Vector& z,
                                       bool with_derivatives) const {
  if (z.size() != dim_) throw UsageError("objective: dimension mismatch");
  ObjectiveEval e = objective_(z, with_derivatives);
  if (with_derivatives && e.gradient.size() != dim_) {
    throw UsageError("objective: gradient has wrong length");
  }
  return e;
}

RowsEval SmoothProgram::ineq(const Vector& z, bool with_derivatives) const {
  if (z.size() != dim_) throw UsageError("ineq: dimension mismatch");
  RowsEval r = ineq_(z, with_derivatives);
  check_rows(r, m_, dim_, with_derivatives, "ineq");
  return r;
}

RowsEval SmoothProgram::eq(const Vector& z, bool with_derivatives) const {
  if (z.size() != dim_) throw UsageError("eq: dimension mismatch");
  RowsEval r = eq_(z, with_derivatives);
  check_rows(r, p_, dim_, with_derivatives, "eq");
  return r;
}

SmoothProgram SmoothProgram::with_bounds(Vector lower, Vector upper) const {
  return SmoothProgram(dim_, objective_, m_, ineq_, p_, eq_, std::move(lower),
                       std::move(upper));
}

namespace {

RowsFn stack_rows(RowsFn first, int rows_first, RowsFn second,
                  int rows_second, int dim) {
  return [=](const Vector& z, bool derivs) {
    RowsEval a = first(z, derivs);
    RowsEval b = second(z, derivs);
    RowsEval r;
    r.values.resize(rows_first + rows_second);
    r.values << a.values, b.values;
    if (derivs) {
      r.jacobian.resize(rows_first + rows_second, dim);
      if (rows_first > 0) r.jacobian.topRows(rows_first) = a.jacobian;
      if (rows_second > 0) r.jacobian.bottomRows(rows_second) = b.jacobian;
    }
    return r;
  };
}

}  // namespace

SmoothProgram SmoothProgram::with_extra_ineq(int rows, RowsFn fn) const {
  return SmoothProgram(dim_, objective_, m_ + rows,
                       stack_rows(ineq_, m_, std::move(fn), rows, dim_), p_,
                       eq_, lower_, upper_);
}

SmoothProgram SmoothProgram::with_extra_eq(int rows, RowsFn fn) const {
  return SmoothProgram(dim_, objective_, m_, ineq_, p_ + rows,
                       stack_rows(eq_, p_, std::move(fn), rows, dim_), lower_,
                       upper_);
}

SmoothProgram SmoothProgram::bounds_as_rows() const {
  std::vector<int> lo_idx;
  std::vector<int> up_idx;
  for (int i = 0; i < dim_; ++i) {
    if (std::isfinite(lower_[i])) lo_idx.push_back(i);
  }
  for (int i = 0; i < dim_; ++i) {
    if (std::isfinite(upper_[i])) up_idx.push_back(i);
  }
  const int nlo = static_cast<int>(lo_idx.size());
  const int nup = static_cast<int>(up_idx.size());
  const int dim = dim_;
  Vector lo = lower_;
  Vector up = upper_;
  RowsFn box = [=](const Vector& z, bool derivs) {
    RowsEval r;
    r.values.resize(nlo + nup);
    if (derivs) r.jacobian = Matrix::Zero(nlo + nup, dim);
    for (int k = 0; k < nlo; ++k) {
      const int i = lo_idx[k];
      r.values[k] = lo[i] - z[i];
      if (derivs) r.jacobian(k, i) = -1.0;
    }
    for (int k = 0; k < nup; ++k) {
      const int i = up_idx[k];
      r.values[nlo + k] = z[i] - up[i];
      if (derivs) r.jacobian(nlo + k, i) = 1.0;
    }
    return r;
  };
  SmoothProgram out = with_extra_ineq(nlo + nup, std::move(box));
  return out.with_bounds(Vector::Constant(dim_, -kInf),
                         Vector::Constant(dim_, kInf));
}

double SmoothProgram::constraint_violation(const Vector& z) const {
  double v = 0.0;
  const Vector g = ineq(z, false).values;
  for (int i = 0; i < m_; ++i) v = std::max(v, g[i]);
  const Vector h = eq(z, false).values;
  for (int i = 0; i < p_; ++i) v = std::max(v, std::abs(h[i]));
  for (int i = 0; i < dim_; ++i) {
    v = std::max(v, lower_[i] - z[i]);
    v = std::max(v, z[i] - upper_[i]);
  }
  return v;
}

}  // namespace ccrelax
