/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#include "ccrelax/model.hpp"

#include "ccrelax/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace ccrelax {

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("normal_quantile: probability must lie in (0, 1)");
  }
  // Acklam's rational approximation (relative error ~1e-9).
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // Halley step on Phi(x) - p. In the upper tail work with the complement
  // so the residual is not swamped by cancellation.
  double e;
  if (p > 0.5) {
    e = (1.0 - p) - 0.5 * std::erfc(x / std::numbers::sqrt2);
  } else {
    e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  }
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

std::string_view to_string(RiskKind kind) {
  switch (kind) {
    case RiskKind::VaR: return "VaR";
    case RiskKind::CVaR: return "CVaR";
    case RiskKind::RVaR: return "RVaR";
    case RiskKind::RCVaR: return "RCVaR";
  }
  return "?";
}

RiskKind parse_risk_kind(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  if (s == "var") return RiskKind::VaR;
  if (s == "cvar") return RiskKind::CVaR;
  if (s == "rvar") return RiskKind::RVaR;
  if (s == "rcvar") return RiskKind::RCVaR;
  throw UsageError("unknown risk measure '" + std::string(text) + "'");
}

RiskSpec::RiskSpec(RiskKind k, double b) : kind(k), beta(b) {
  if (!(b > 0.5 && b < 1.0)) {
    throw DomainError("confidence level beta must lie in (0.5, 1), got " +
                      std::to_string(b));
  }
}

double risk_coefficient(RiskKind kind, double beta) {
  if (!(beta > 0.5 && beta < 1.0)) {
    throw DomainError("confidence level beta must lie in (0.5, 1), got " +
                      std::to_string(beta));
  }
  switch (kind) {
    case RiskKind::VaR:
      return -normal_quantile(1.0 - beta);
    case RiskKind::CVaR:
      return normal_pdf(normal_quantile(1.0 - beta)) / (1.0 - beta);
    case RiskKind::RVaR:
      return (2.0 * beta - 1.0) / (2.0 * std::sqrt(beta * (1.0 - beta)));
    case RiskKind::RCVaR:
      return std::sqrt(beta / (1.0 - beta));
  }
  throw UsageError("unknown risk kind");
}

PortfolioInstance::PortfolioInstance(Vector mean, Matrix cov, Vector ubound,
                                     int kappa)
    : mean_(std::move(mean)),
      cov_(std::move(cov)),
      ubound_(std::move(ubound)),
      kappa_(kappa) {
  const int n = static_cast<int>(mean_.size());
  if (n < 1) throw UsageError("instance needs at least one asset");
  if (cov_.rows() != n || cov_.cols() != n) {
    throw UsageError("covariance must be n x n with n = " + std::to_string(n));
  }
  if (ubound_.size() != n) throw UsageError("ubound must have length n");
  if (kappa_ < 1 || kappa_ >= n) {
    throw UsageError("kappa must satisfy 1 <= kappa < n");
  }
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(mean_[i])) throw UsageError("mean has non-finite entry");
    if (!(ubound_[i] > 0.0 && ubound_[i] <= 1.0)) {
      throw UsageError("ubound entries must lie in (0, 1]");
    }
  }
  if (!cov_.allFinite()) throw UsageError("covariance has non-finite entry");
  cov_ = 0.5 * (cov_ + cov_.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov_, Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues().minCoeff();
  const double lmax = std::max(eig.eigenvalues().maxCoeff(), 0.0);
  if (lmin < -1e-10 * lmax) {
    throw UsageError("covariance is not positive semidefinite (min eigenvalue " +
                     std::to_string(lmin) + ")");
  }
}

PortfolioInstance PortfolioInstance::with_kappa(int kappa) const {
  return PortfolioInstance(mean_, cov_, ubound_, kappa);
}

namespace {

void check_length(const PortfolioInstance& inst, const Vector& x) {
  if (x.size() != inst.n()) {
    throw UsageError("portfolio vector has length " + std::to_string(x.size()) +
                     ", expected " + std::to_string(inst.n()));
  }
}

double portfolio_sd(const Matrix& cov, const Vector& x) {
  return std::sqrt(std::max(0.0, x.dot(cov * x)));
}

}  // namespace

double risk_value(const PortfolioInstance& inst, const RiskSpec& spec,
                  const Vector& x) {
  check_length(inst, x);
  const double c = risk_coefficient(spec.kind, spec.beta);
  return c * portfolio_sd(inst.cov(), x) - inst.mean().dot(x);
}

Vector risk_gradient(const PortfolioInstance& inst, const RiskSpec& spec,
                     const Vector& x) {
  check_length(inst, x);
  const double c = risk_coefficient(spec.kind, spec.beta);
  const Vector qx = inst.cov() * x;
  const double sd = std::max(std::sqrt(std::max(0.0, x.dot(qx))),
                             kGradientNormFloor);
  return (c / sd) * qx - inst.mean();
}

SmoothProgram portfolio_program(const PortfolioInstance& inst,
                                const RiskSpec& spec) {
  const int n = inst.n();
  const double c = risk_coefficient(spec.kind, spec.beta);
  const Matrix cov = inst.cov();
  const Vector mean = inst.mean();

  ObjectiveFn objective = [c, cov, mean](const Vector& x, bool derivs) {
    ObjectiveEval e;
    const Vector qx = cov * x;
    const double var = std::max(0.0, x.dot(qx));
    const double sd = std::sqrt(var);
    e.value = c * sd - mean.dot(x);
    if (derivs) e.gradient = (c / std::max(sd, kGradientNormFloor)) * qx - mean;
    return e;
  };
  RowsFn budget = [n](const Vector& x, bool derivs) {
    RowsEval r;
    r.values = Vector::Constant(1, x.sum() - 1.0);
    if (derivs) r.jacobian = Matrix::Ones(1, n);
    return r;
  };
  return SmoothProgram(n, std::move(objective), 0, no_rows(n), 1,
                       std::move(budget), Vector::Zero(n), inst.ubound());
}

int cardinality(const Vector& x, double tol) {
  if (!(tol > 0.0)) throw UsageError("cardinality tolerance must be positive");
  int count = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > tol) ++count;
  }
  return count;
}

}  // namespace ccrelax
