/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "ccrelax/model.hpp"
#include "ccrelax/nlp.hpp"
#include "ccrelax/program.hpp"

#include <cstdint>
#include <vector>

namespace ccrelax {

struct OracleResult {
  Vector x;
  double objective = 0.0;
  std::vector<int> support;  // sorted
  long supports_solved = 0;
};

/// Global minimum over all supports of size <= kappa, each restriction
/// solved from uniform weights on the support. Assumes convex restrictions.
/// Ties (relative 1e-9) go to the lexicographically smallest support.
/// Throws UsageError when n > n_limit or C(n, kappa) > 1e5, and
/// InfeasibleError when no restriction is feasible.
OracleResult enumerate_supports(const SmoothProgram& prog, int kappa,
                                int n_limit = 15,
                                const SolverOptions& opts = {});

struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
};

/// Monte Carlo CVaR_beta of the loss -x'xi with xi ~ N(mean, cov): average of
/// the worst ceil((1 - beta) N) sampled losses. Reproducible for a fixed seed.
McEstimate mc_cvar(const PortfolioInstance& inst, double beta, const Vector& x,
                   long samples, std::uint64_t seed);

}  // namespace ccrelax
