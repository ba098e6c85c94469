/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "ccrelax/program.hpp"
#include "ccrelax/reformulate.hpp"

#include <string_view>
#include <vector>

namespace ccrelax {

// Stationarity and constraint-qualification certificates for the continuous
// reformulation. All checks work on prog.bounds_as_rows(), so the box of the
// original program appears as ordinary inequality rows: the lambda vectors
// below index [g rows | finite lower-bound rows | finite upper-bound rows].

inline constexpr double kDefaultActiveTol = 1e-6;
inline constexpr double kDefaultResidualTol = 1e-5;
/// Slack below which a strictly feasible direction is treated as absent.
inline constexpr double kSlackThreshold = 1e-8;

struct ActiveSets {
  std::vector<int> ineq_active;  // |g_i(x)| <= tol_act, rows of bounds_as_rows()
  std::vector<int> zero_set;     // |x_i| <= tol_act
};

ActiveSets active_sets(const SmoothProgram& prog, const Vector& x,
                       double tol_act);

enum class Stationarity { S, M, None };

std::string_view to_string(Stationarity s);

struct StationarityCertificate {
  Stationarity classification = Stationarity::None;
  Vector gamma;
  Vector lambda;
  Vector mu;
  double residual = 0.0;  // ||grad f + J'lambda + H'mu + gamma||_inf
  bool cq_holds = false;  // CC-MFCQ at the point
};

/// Least-residual multipliers for the stationarity system under the S
/// support rule (gamma_i = 0 where y_i = 0) and, failing that, the M rule
/// (gamma_i = 0 where x_i != 0); lambda >= 0 supported on the active rows.
/// Reports the strongest class whose residual is <= tol_res, with the
/// multipliers of that system (of the M system when neither holds).
/// Throws UsageError when the pair is not reformulation-feasible at tol_act.
StationarityCertificate classify(const SmoothProgram& prog, int kappa,
                                 const IteratePair& pair,
                                 double tol_act = kDefaultActiveTol,
                                 double tol_res = kDefaultResidualTol);

/// Residual of the stationarity equation recomputed from a certificate.
double stationarity_residual(const SmoothProgram& prog, const Vector& x,
                             const StationarityCertificate& cert);

struct CqCheck {
  bool holds = false;
  bool rank_ok = false;     // free-sign block linearly independent
  double slack = 0.0;       // optimal uniform slack of the direction LP
  // Nonzero dependence witness when !holds.
  Vector lambda;
  Vector mu;
  Vector gamma;             // empty for check_mfcq_regularized
};

/// CC-MFCQ: the gradients of active g rows, of all h rows and e_i (i in I0)
/// are positively linearly independent. Decided by a rank test on the
/// free-sign block and a slack-maximizing direction LP for the rest.
CqCheck check_cc_mfcq(const SmoothProgram& prog, const IteratePair& pair,
                      double tol_act = kDefaultActiveTol);

/// Classical MFCQ of a (regularized) program at a point.
CqCheck check_mfcq_regularized(const SmoothProgram& prog_t, const Vector& point,
                               double tol_act = kDefaultActiveTol);

}  // namespace ccrelax
