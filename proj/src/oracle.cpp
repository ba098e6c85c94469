/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#include "ccrelax/oracle.hpp"

#include "ccrelax/errors.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace ccrelax {

namespace {

constexpr double kFeasTol = 1e-6;
constexpr long kMaxSupports = 100000;

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct Enumerator {
  const SmoothProgram& prog;
  int kappa;
  const SolverOptions& opts;
  OracleResult best;
  bool found = false;
  std::vector<int> current;

  void visit() {
    const int n = prog.dim();
    Vector lo = Vector::Zero(n);
    Vector up = Vector::Zero(n);
    for (int i : current) {
      lo[i] = prog.lower()[i];
      up[i] = prog.upper()[i];
    }
    const SmoothProgram restricted = prog.with_bounds(lo, up);
    Vector x0 = Vector::Zero(n);
    if (!current.empty()) {
      const double w = 1.0 / static_cast<double>(current.size());
      for (int i : current) x0[i] = std::clamp(w, lo[i], up[i]);
    }
    const SolveReport rep = solve(restricted, x0, opts);
    ++best.supports_solved;
    if (rep.status == SolveStatus::Infeasible ||
        rep.status == SolveStatus::NumericalFailure ||
        rep.violation > kFeasTol || !std::isfinite(rep.objective)) {
      return;
    }
    const double slack = 1e-9 * std::max(1.0, std::abs(best.objective));
    if (!found || rep.objective < best.objective - slack) {
      found = true;
      best.x = rep.point;
      best.objective = rep.objective;
      best.support = current;
    }
  }

  // Depth-first order visits supports in lexicographic order.
  void recurse(int start) {
    visit();
    if (static_cast<int>(current.size()) == kappa) return;
    for (int i = start; i < prog.dim(); ++i) {
      current.push_back(i);
      recurse(i + 1);
      current.pop_back();
    }
  }
};

}  // namespace

OracleResult enumerate_supports(const SmoothProgram& prog, int kappa,
                                int n_limit, const SolverOptions& opts) {
  const int n = prog.dim();
  if (kappa < 1 || kappa > n) {
    throw UsageError("enumerate_supports: kappa must be in [1, n]");
  }
  if (n > n_limit) throw UsageError("enumerate_supports: n exceeds n_limit");
  if (binomial(n, kappa) > static_cast<double>(kMaxSupports)) {
    throw UsageError("enumerate_supports: too many supports");
  }
  Enumerator e{prog, kappa, opts, {}, false, {}};
  e.recurse(0);
  if (!e.found) throw InfeasibleError("enumerate_supports: every support is infeasible");
  return e.best;
}

McEstimate mc_cvar(const PortfolioInstance& inst, double beta, const Vector& x,
                   long samples, std::uint64_t seed) {
  const int n = inst.n();
  if (x.size() != n) throw UsageError("mc_cvar: bad dimension");
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("mc_cvar: beta must be in (0, 1)");
  if (samples < 10000) throw UsageError("mc_cvar: at least 1e4 samples required");

  Eigen::LLT<Matrix> llt(inst.cov());
  if (llt.info() != Eigen::Success) {
    const double jitter = 1e-12 * std::max(inst.cov().trace(), 1.0);
    llt.compute(inst.cov() + jitter * Matrix::Identity(n, n));
    if (llt.info() != Eigen::Success) {
      throw NumericalError("mc_cvar: covariance is not factorizable");
    }
  }
  // Loss -x'xi = -mu'x - (L'x)'z with z standard normal.
  const Vector w = llt.matrixL().transpose() * x;
  const double shift = -inst.mean().dot(x);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> loss(static_cast<std::size_t>(samples));
  Vector z(n);
  for (auto& l : loss) {
    for (int j = 0; j < n; ++j) z[j] = normal(rng);
    l = shift - w.dot(z);
  }

  const auto tail = static_cast<long>(std::ceil((1.0 - beta) * static_cast<double>(samples)));
  std::nth_element(loss.begin(), loss.end() - tail, loss.end());
  const double var = *(loss.end() - tail);
  double sum = 0.0;
  for (auto it = loss.end() - tail; it != loss.end(); ++it) sum += *it;

  // Standard error of the Rockafellar-Uryasev form var + E[(L - var)_+]/(1 - beta).
  double m = 0.0;
  double m2 = 0.0;
  for (double l : loss) {
    const double e = std::max(l - var, 0.0);
    m += e;
    m2 += e * e;
  }
  const auto N = static_cast<double>(samples);
  m /= N;
  const double variance = std::max(m2 / N - m * m, 0.0) * N / (N - 1.0);
  return {sum / static_cast<double>(tail),
          std::sqrt(variance / N) / (1.0 - beta)};
}

}  // namespace ccrelax
