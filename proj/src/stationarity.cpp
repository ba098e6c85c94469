/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#include "ccrelax/stationarity.hpp"

#include "dense_lp.hpp"

#include "ccrelax/errors.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>

namespace ccrelax {

std::string_view to_string(Stationarity s) {
  switch (s) {
    case Stationarity::S: return "S";
    case Stationarity::M: return "M";
    case Stationarity::None: return "None";
  }
  return "?";
}

ActiveSets active_sets(const SmoothProgram& prog, const Vector& x,
                       double tol_act) {
  if (x.size() != prog.dim()) throw UsageError("active_sets: bad dimension");
  const SmoothProgram rows = prog.bounds_as_rows();
  const Vector g = rows.ineq(x, false).values;
  ActiveSets sets;
  for (int i = 0; i < g.size(); ++i) {
    if (std::abs(g[i]) <= tol_act) sets.ineq_active.push_back(i);
  }
  for (int i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) <= tol_act) sets.zero_set.push_back(i);
  }
  return sets;
}

namespace {

struct Linearization {
  Vector grad_f;
  Matrix jac_g;  // rows of bounds_as_rows()
  Matrix jac_h;
};

Linearization linearize(const SmoothProgram& prog, const Vector& x) {
  const SmoothProgram rows = prog.bounds_as_rows();
  return {rows.objective(x, true).gradient, rows.ineq(x, true).jacobian,
          rows.eq(x, true).jacobian};
}

struct SupportSolve {
  Vector lambda;
  Vector mu;
  Vector gamma;
  double residual;
};

SupportSolve solve_support(const Linearization& lin,
                           const std::vector<int>& active,
                           const std::vector<int>& gamma_allowed) {
  const int n = static_cast<int>(lin.grad_f.size());
  const int na = static_cast<int>(active.size());
  const int p = static_cast<int>(lin.jac_h.rows());
  const int ng = static_cast<int>(gamma_allowed.size());
  Matrix A(n, na + p + ng);
  std::vector<bool> nonneg(na + p + ng, false);
  for (int k = 0; k < na; ++k) {
    A.col(k) = lin.jac_g.row(active[k]).transpose();
    nonneg[k] = true;
  }
  if (p > 0) A.middleCols(na, p) = lin.jac_h.transpose();
  for (int k = 0; k < ng; ++k) {
    A.col(na + p + k) = Vector::Unit(n, gamma_allowed[k]);
  }
  const Vector w = detail::bounded_least_squares(A, -lin.grad_f, nonneg);

  SupportSolve out;
  out.lambda = Vector::Zero(lin.jac_g.rows());
  for (int k = 0; k < na; ++k) out.lambda[active[k]] = w[k];
  out.mu = w.segment(na, p);
  out.gamma = Vector::Zero(n);
  for (int k = 0; k < ng; ++k) out.gamma[gamma_allowed[k]] = w[na + p + k];
  Vector r = lin.grad_f + lin.jac_g.transpose() * out.lambda + out.gamma;
  if (p > 0) r += lin.jac_h.transpose() * out.mu;
  out.residual = r.lpNorm<Eigen::Infinity>();
  return out;
}

// Positive linear independence of {grad g_i : i in active} together with the
// free-sign vectors `free_cols` (columns). Coordinates in `fixed` are pinned
// (d_i = 0) in the direction LP, which encodes unit vectors e_i among the
// free-sign gradients without adding rows.
CqCheck positive_independence(const Matrix& active_grads,
                              const Matrix& free_cols,
                              const std::vector<int>& fixed, int dim) {
  CqCheck out;
  const int na = static_cast<int>(active_grads.rows());
  const int nf = static_cast<int>(free_cols.cols());

  // (a) free-sign block must have full column rank.
  out.rank_ok = true;
  if (nf > 0) {
    if (nf > dim) {
      out.rank_ok = false;
    } else {
      Eigen::JacobiSVD<Matrix> svd(free_cols, Eigen::ComputeFullV);
      const Vector& sv = svd.singularValues();
      const double smax = sv.size() > 0 ? sv[0] : 0.0;
      const double smin = sv.size() > 0 ? sv[sv.size() - 1] : 0.0;
      if (smax <= 0.0 || smin <= 1e-8 * smax) {
        out.rank_ok = false;
        out.lambda = Vector::Zero(na);
        out.mu = svd.matrixV().col(nf - 1);
      }
    }
    if (!out.rank_ok) {
      if (out.mu.size() == 0) {
        // More free vectors than dimensions: take any null vector.
        Eigen::FullPivLU<Matrix> lu(free_cols);
        const Matrix ker = lu.kernel();
        out.mu = ker.col(0).normalized();
        out.lambda = Vector::Zero(na);
      }
      out.holds = false;
      out.slack = 0.0;
      return out;
    }
  }

  if (na == 0) {
    out.holds = true;
    out.slack = std::numeric_limits<double>::infinity();
    return out;
  }

  // (b) max s  s.t. grad_g_i' d + s <= 0, free_cols' d = 0, |d| <= 1,
  // 0 <= s <= 1, d_i = 0 on `fixed`. Split d = d+ - d- over free coords.
  std::vector<bool> is_fixed(dim, false);
  for (int i : fixed) is_fixed[i] = true;
  std::vector<int> coords;
  for (int i = 0; i < dim; ++i) {
    if (!is_fixed[i]) coords.push_back(i);
  }
  const int nc = static_cast<int>(coords.size());
  const int nvar = 2 * nc + 1;
  const int nrows = na + 2 * nf + 2 * nc + 1;
  Matrix A = Matrix::Zero(nrows, nvar);
  Vector b = Vector::Zero(nrows);
  int row = 0;
  auto put_direction = [&](int r, const Vector& a, double sign) {
    for (int k = 0; k < nc; ++k) {
      A(r, k) = sign * a[coords[k]];
      A(r, nc + k) = -sign * a[coords[k]];
    }
  };
  for (int i = 0; i < na; ++i, ++row) {
    put_direction(row, active_grads.row(i).transpose(), 1.0);
    A(row, 2 * nc) = 1.0;
  }
  for (int j = 0; j < nf; ++j) {
    put_direction(row++, free_cols.col(j), 1.0);
    put_direction(row++, free_cols.col(j), -1.0);
  }
  for (int k = 0; k < 2 * nc; ++k, ++row) {
    A(row, k) = 1.0;
    b[row] = 1.0;
  }
  A(row, 2 * nc) = 1.0;
  b[row] = 1.0;

  Vector c = Vector::Zero(nvar);
  c[2 * nc] = 1.0;
  const detail::LpResult lp = detail::maximize_lp(A, b, c);
  out.slack = lp.status == detail::LpStatus::Optimal ? lp.objective : 0.0;
  out.holds = lp.status == detail::LpStatus::Optimal &&
              out.slack > kSlackThreshold;
  if (out.holds) return out;

  // Witness: lambda >= 0 summing to one, free multipliers unrestricted,
  // minimizing || sum lambda_i grad g_i + free_cols * mu ||.
  const int nfixed = static_cast<int>(fixed.size());
  Matrix W = Matrix::Zero(dim + 1, na + nf + nfixed);
  std::vector<bool> nonneg(na + nf + nfixed, false);
  for (int i = 0; i < na; ++i) {
    W.col(i).head(dim) = active_grads.row(i).transpose();
    W(dim, i) = 1.0;
    nonneg[i] = true;
  }
  if (nf > 0) W.block(0, na, dim, nf) = free_cols;
  for (int k = 0; k < nfixed; ++k) W(fixed[k], na + nf + k) = 1.0;
  Vector rhs = Vector::Zero(dim + 1);
  rhs[dim] = 1.0;
  const Vector w = detail::bounded_least_squares(W, rhs, nonneg);
  out.lambda = w.head(na);
  out.mu = w.segment(na, nf);
  out.gamma = w.tail(nfixed);
  return out;
}

}  // namespace

StationarityCertificate classify(const SmoothProgram& prog, int kappa,
                                 const IteratePair& pair, double tol_act,
                                 double tol_res) {
  if (pair.n() != prog.dim()) throw UsageError("classify: bad dimension");
  if (!(tol_act > 0.0) || !(tol_res > 0.0)) {
    throw UsageError("classify: tolerances must be positive");
  }
  if (!reformulation_feasible(prog, kappa, pair, tol_act)) {
    throw UsageError("classify: pair is not feasible for the reformulation");
  }
  const int n = prog.dim();
  const Linearization lin = linearize(prog, pair.x);
  const ActiveSets sets = active_sets(prog, pair.x, tol_act);

  std::vector<int> s_allowed;
  std::vector<int> m_allowed;
  for (int i = 0; i < n; ++i) {
    if (std::abs(pair.y[i]) > tol_act) s_allowed.push_back(i);
    if (std::abs(pair.x[i]) <= tol_act) m_allowed.push_back(i);
  }

  StationarityCertificate cert;
  cert.cq_holds = check_cc_mfcq(prog, pair, tol_act).holds;

  auto fill = [&](const SupportSolve& s, Stationarity cls) {
    cert.classification = cls;
    cert.lambda = s.lambda;
    cert.mu = s.mu;
    cert.gamma = s.gamma;
    cert.residual = s.residual;
  };

  const SupportSolve strong = solve_support(lin, sets.ineq_active, s_allowed);
  if (strong.residual <= tol_res) {
    fill(strong, Stationarity::S);
    return cert;
  }
  const SupportSolve weak = solve_support(lin, sets.ineq_active, m_allowed);
  fill(weak, weak.residual <= tol_res ? Stationarity::M : Stationarity::None);
  return cert;
}

double stationarity_residual(const SmoothProgram& prog, const Vector& x,
                             const StationarityCertificate& cert) {
  const Linearization lin = linearize(prog, x);
  if (cert.lambda.size() != lin.jac_g.rows() ||
      cert.mu.size() != lin.jac_h.rows() || cert.gamma.size() != x.size()) {
    throw UsageError("stationarity_residual: certificate dimensions differ");
  }
  Vector r = lin.grad_f + lin.jac_g.transpose() * cert.lambda + cert.gamma;
  if (lin.jac_h.rows() > 0) r += lin.jac_h.transpose() * cert.mu;
  return r.lpNorm<Eigen::Infinity>();
}

CqCheck check_cc_mfcq(const SmoothProgram& prog, const IteratePair& pair,
                      double tol_act) {
  const int n = prog.dim();
  if (pair.n() != n) throw UsageError("check_cc_mfcq: bad dimension");
  const Linearization lin = linearize(prog, pair.x);
  const ActiveSets sets = active_sets(prog, pair.x, tol_act);

  const int na = static_cast<int>(sets.ineq_active.size());
  const int p = static_cast<int>(lin.jac_h.rows());
  const int nz = static_cast<int>(sets.zero_set.size());
  Matrix active(na, n);
  for (int k = 0; k < na; ++k) active.row(k) = lin.jac_g.row(sets.ineq_active[k]);
  Matrix free_cols(n, p + nz);
  if (p > 0) free_cols.leftCols(p) = lin.jac_h.transpose();
  for (int k = 0; k < nz; ++k) free_cols.col(p + k) = Vector::Unit(n, sets.zero_set[k]);

  CqCheck raw = positive_independence(active, free_cols, sets.zero_set, n);
  if (raw.holds) return raw;

  // Map the witness back onto (lambda over all rows, mu over h, gamma over x).
  CqCheck out;
  out.holds = false;
  out.rank_ok = raw.rank_ok;
  out.slack = raw.slack;
  out.lambda = Vector::Zero(lin.jac_g.rows());
  out.mu = Vector::Zero(p);
  out.gamma = Vector::Zero(n);
  for (int k = 0; k < na && k < raw.lambda.size(); ++k) {
    out.lambda[sets.ineq_active[k]] = raw.lambda[k];
  }
  if (!raw.rank_ok) {
    // raw.mu holds coefficients of the free block [h | e_I0].
    out.mu = raw.mu.head(p);
    for (int k = 0; k < nz; ++k) out.gamma[sets.zero_set[k]] = raw.mu[p + k];
  } else {
    out.mu = raw.mu.head(p);
    // Unit-vector coefficients come back twice: through the free block and
    // through the pinned coordinates; both multiply e_i.
    for (int k = 0; k < nz; ++k) {
      out.gamma[sets.zero_set[k]] = raw.mu[p + k] + raw.gamma[k];
    }
  }
  return out;
}

CqCheck check_mfcq_regularized(const SmoothProgram& prog_t, const Vector& point,
                               double tol_act) {
  const int n = prog_t.dim();
  if (point.size() != n) throw UsageError("check_mfcq_regularized: bad dimension");
  const SmoothProgram rows = prog_t.bounds_as_rows();
  const RowsEval g = rows.ineq(point, true);
  const RowsEval h = rows.eq(point, true);
  std::vector<int> active_idx;
  for (int i = 0; i < g.values.size(); ++i) {
    if (std::abs(g.values[i]) <= tol_act) active_idx.push_back(i);
  }
  const int na = static_cast<int>(active_idx.size());
  Matrix active(na, n);
  for (int k = 0; k < na; ++k) active.row(k) = g.jacobian.row(active_idx[k]);
  const Matrix free_cols = h.jacobian.transpose();

  CqCheck raw = positive_independence(active, free_cols, {}, n);
  if (raw.holds) return raw;
  CqCheck out = raw;
  out.lambda = Vector::Zero(g.values.size());
  for (int k = 0; k < na && k < raw.lambda.size(); ++k) {
    out.lambda[active_idx[k]] = raw.lambda[k];
  }
  out.gamma = Vector();
  return out;
}

}  // namespace ccrelax
