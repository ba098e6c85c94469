/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#include "ccrelax/reformulate.hpp"

#include "ccrelax/errors.hpp"
#include "ccrelax/model.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace ccrelax {

IteratePair::IteratePair(Vector x_, Vector y_)
    : x(std::move(x_)), y(std::move(y_)) {
  if (x.size() != y.size()) throw UsageError("x and y must have equal length");
}

Vector IteratePair::joined() const {
  Vector z(2 * x.size());
  z << x, y;
  return z;
}

IteratePair IteratePair::split(const Vector& z) {
  if (z.size() % 2 != 0) throw UsageError("joined vector has odd length");
  const Eigen::Index n = z.size() / 2;
  return IteratePair(z.head(n), z.tail(n));
}

PhiEval phi(double a, double b, double t) {
  const double am = a - t;
  const double bm = b - t;
  if (a + b >= 2.0 * t) return {am * bm, bm, am};
  return {-0.5 * (am * am + bm * bm), -am, -bm};
}

namespace {


void check_kappa(const SmoothProgram& prog, int kappa) {
  if (kappa < 1 || kappa >= prog.dim()) {
    throw UsageError("kappa must satisfy 1 <= kappa < n (kappa = " +
                     std::to_string(kappa) + ", n = " +
                     std::to_string(prog.dim()) + ")");
  }
}

void check_t(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw UsageError("regularization parameter t must be finite and >= 0");
  }
}

// Lifts the original program to z = (x, y): objective and rows only see x,
// box becomes [lower, upper] x [0, 1].
struct Lifted {
  int n;
  int m;
  int p;
  ObjectiveFn objective;
  RowsFn ineq;
  RowsFn eq;
  Vector lower;
  Vector upper;
};

Lifted lift(const SmoothProgram& prog) {
  const int n = prog.dim();
  Lifted L{n, prog.num_ineq(), prog.num_eq(), {}, {}, {}, {}, {}};
  L.objective = [prog, n](const Vector& z, bool derivs) {
    ObjectiveEval inner = prog.objective(z.head(n), derivs);
    ObjectiveEval e;
    e.value = inner.value;
    if (derivs) {
      e.gradient = Vector::Zero(2 * n);
      e.gradient.head(n) = inner.gradient;
    }
    return e;
  };
  auto lift_rows = [prog, n](bool ineq) {
    return [prog, n, ineq](const Vector& z, bool derivs) {
      RowsEval inner = ineq ? prog.ineq(z.head(n), derivs)
                            : prog.eq(z.head(n), derivs);
      RowsEval r;
      r.values = std::move(inner.values);
      if (derivs) {
        r.jacobian = Matrix::Zero(r.values.size(), 2 * n);
        r.jacobian.leftCols(n) = inner.jacobian;
      }
      return r;
    };
  };
  L.ineq = lift_rows(true);
  L.eq = lift_rows(false);
  L.lower.resize(2 * n);
  L.upper.resize(2 * n);
  L.lower << prog.lower(), Vector::Zero(n);
  L.upper << prog.upper(), Vector::Ones(n);
  return L;
}

RowsFn cardinality_row(int n, int kappa) {
  return [n, kappa](const Vector& z, bool derivs) {
    RowsEval r;
    r.values = Vector::Constant(1, double(n - kappa) - z.tail(n).sum());
    if (derivs) {
      r.jacobian = Matrix::Zero(1, 2 * n);
      r.jacobian.rightCols(n).setConstant(-1.0);
    }
    return r;
  };
}

SmoothProgram assemble(const Lifted& L, int comp_rows, RowsFn comp, int kappa,
                       bool comp_as_eq) {
  SmoothProgram base(2 * L.n, L.objective, L.m, L.ineq, L.p, L.eq, L.lower,
                     L.upper);
  if (comp_as_eq) {
    return base.with_extra_ineq(1, cardinality_row(L.n, kappa))
        .with_extra_eq(comp_rows, std::move(comp));
  }
  return base.with_extra_ineq(comp_rows, std::move(comp))
      .with_extra_ineq(1, cardinality_row(L.n, kappa));
}

}  // namespace

SmoothProgram continuous_reformulation(const SmoothProgram& prog, int kappa) {
  check_kappa(prog, kappa);
  const Lifted L = lift(prog);
  const int n = L.n;
  RowsFn comp = [n](const Vector& z, bool derivs) {
    RowsEval r;
    r.values = z.head(n).cwiseProduct(z.tail(n));
    if (derivs) {
      r.jacobian = Matrix::Zero(n, 2 * n);
      for (int i = 0; i < n; ++i) {
        r.jacobian(i, i) = z[n + i];
        r.jacobian(i, n + i) = z[i];
      }
    }
    return r;
  };
  return assemble(L, n, std::move(comp), kappa, /*comp_as_eq=*/true);
}

SmoothProgram scholtes_program(const SmoothProgram& prog, int kappa, double t,
                               bool nonneg_x) {
  check_kappa(prog, kappa);
  check_t(t);
  const Lifted L = lift(prog);
  const int n = L.n;
  const int rows = complementarity_rows(n, nonneg_x);
  RowsFn comp = [n, t, nonneg_x, rows](const Vector& z, bool derivs) {
    RowsEval r;
    r.values.resize(rows);
    if (derivs) r.jacobian = Matrix::Zero(rows, 2 * n);
    for (int i = 0; i < n; ++i) {
      const double xy = z[i] * z[n + i];
      r.values[i] = xy - t;
      if (derivs) {
        r.jacobian(i, i) = z[n + i];
        r.jacobian(i, n + i) = z[i];
      }
      if (!nonneg_x) {
        r.values[n + i] = -t - xy;
        if (derivs) {
          r.jacobian(n + i, i) = -z[n + i];
          r.jacobian(n + i, n + i) = -z[i];
        }
      }
    }
    return r;
  };
  return assemble(L, rows, std::move(comp), kappa, /*comp_as_eq=*/false);
}

SmoothProgram kanzow_schwartz_program(const SmoothProgram& prog, int kappa,
                                      double t, bool nonneg_x) {
  check_kappa(prog, kappa);
  check_t(t);
  const Lifted L = lift(prog);
  const int n = L.n;
  const int rows = complementarity_rows(n, nonneg_x);
  RowsFn comp = [n, t, nonneg_x, rows](const Vector& z, bool derivs) {
    RowsEval r;
    r.values.resize(rows);
    if (derivs) r.jacobian = Matrix::Zero(rows, 2 * n);
    for (int i = 0; i < n; ++i) {
      const PhiEval plus = phi(z[i], z[n + i], t);
      r.values[i] = plus.value;
      if (derivs) {
        r.jacobian(i, i) = plus.da;
        r.jacobian(i, n + i) = plus.db;
      }
      if (!nonneg_x) {
        const PhiEval minus = phi(-z[i], z[n + i], t);
        r.values[n + i] = minus.value;
        if (derivs) {
          r.jacobian(n + i, i) = -minus.da;
          r.jacobian(n + i, n + i) = minus.db;
        }
      }
    }
    return r;
  };
  return assemble(L, rows, std::move(comp), kappa, /*comp_as_eq=*/false);
}

SmoothProgram regularized_program(const SmoothProgram& prog, int kappa,
                                  double t, const RegularizationKind& kind) {
  switch (kind.variant) {
    case Regularization::Scholtes:
      return scholtes_program(prog, kappa, t, kind.nonneg_x);
    case Regularization::KanzowSchwartz:
      return kanzow_schwartz_program(prog, kappa, t, kind.nonneg_x);
  }
  throw UsageError("unknown regularization");
}

bool reformulation_feasible(const SmoothProgram& prog, int kappa,
                            const IteratePair& pair, double eps) {
  const int n = prog.dim();
  if (pair.n() != n) throw UsageError("pair length differs from program dim");
  for (int i = 0; i < n; ++i) {
    if (pair.y[i] < -eps || pair.y[i] > 1.0 + eps) return false;
  }
  if (pair.y.sum() < double(n - kappa) - eps) return false;
  if (prog.constraint_violation(pair.x) > eps) return false;
  return pair.x.cwiseProduct(pair.y).lpNorm<Eigen::Infinity>() <= eps;
}

Vector recover_y(const Vector& x, int kappa, double tol) {
  const int card = cardinality(x, tol);
  if (card > kappa) {
    throw InfeasibleError("cardinality " + std::to_string(card) +
                          " exceeds budget " + std::to_string(kappa));
  }
  Vector y(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    y[i] = std::abs(x[i]) <= tol ? 1.0 : 0.0;
  }
  return y;
}

}  // namespace ccrelax
