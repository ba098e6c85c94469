/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "ccrelax/program.hpp"

#include <string>
#include <string_view>

namespace ccrelax {

// ---------------------------------------------------------------------------
// Standard normal distribution helpers
// ---------------------------------------------------------------------------

double normal_pdf(double x);
double normal_cdf(double x);

/// Inverse of the standard normal CDF on (0, 1). Rational initial guess
/// followed by one Halley correction against erfc; absolute error below
/// 1e-12 on [1e-10, 1 - 1e-10].
double normal_quantile(double p);

// ---------------------------------------------------------------------------
// Risk measures
// ---------------------------------------------------------------------------

enum class RiskKind { VaR, CVaR, RVaR, RCVaR };

std::string_view to_string(RiskKind kind);
/// Accepts "VaR", "CVaR", "RVaR", "RCVaR" (case-insensitive).
RiskKind parse_risk_kind(std::string_view text);

struct RiskSpec {
  RiskKind kind = RiskKind::CVaR;
  double beta = 0.95;

  /// Throws DomainError unless 0.5 < beta < 1.
  RiskSpec(RiskKind k, double b);
};

/// Coefficient c_beta multiplying the portfolio standard deviation:
///   VaR   : -Phi^{-1}(1 - beta)
///   CVaR  : phi(Phi^{-1}(1 - beta)) / (1 - beta)
///   RVaR  : (2 beta - 1) / (2 sqrt(beta (1 - beta)))
///   RCVaR : sqrt(beta / (1 - beta))
double risk_coefficient(RiskKind kind, double beta);

// ---------------------------------------------------------------------------
// Portfolio data
// ---------------------------------------------------------------------------

/// Long-only portfolio selection data: expected returns, covariance,
/// per-asset caps and the cardinality budget.
///
/// The covariance is symmetrized on construction and must be PSD up to
/// -1e-10 times its largest eigenvalue. An instance may still be
/// infeasible (caps too small for the budget); that is detected by solvers.
class PortfolioInstance {
 public:
  PortfolioInstance(Vector mean, Matrix cov, Vector ubound, int kappa);

  int n() const { return static_cast<int>(mean_.size()); }
  int kappa() const { return kappa_; }
  const Vector& mean() const { return mean_; }
  const Matrix& cov() const { return cov_; }
  const Vector& ubound() const { return ubound_; }

  /// Copy with a different cardinality budget.
  PortfolioInstance with_kappa(int kappa) const;

 private:
  Vector mean_;
  Matrix cov_;
  Vector ubound_;
  int kappa_;
};

/// Gradient norm floor: sqrt(x'Qx) is clamped from below inside the gradient
/// only, so the gradient is defined at x = 0.
inline constexpr double kGradientNormFloor = 1e-10;

/// r(x) = c_beta * sqrt(x'Qx) - mu'x
double risk_value(const PortfolioInstance& inst, const RiskSpec& spec,
                  const Vector& x);

/// c_beta * Qx / max(sqrt(x'Qx), 1e-10) - mu
Vector risk_gradient(const PortfolioInstance& inst, const RiskSpec& spec,
                     const Vector& x);

/// Smooth part of the portfolio problem: objective r(x), the budget row
/// e'x - 1 = 0 and the box 0 <= x <= u. The cardinality budget is left to
/// the reformulations.
SmoothProgram portfolio_program(const PortfolioInstance& inst,
                                const RiskSpec& spec);

/// Number of components with |x_i| > tol (strict).
int cardinality(const Vector& x, double tol);

}  // namespace ccrelax
