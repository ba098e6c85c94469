/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "ccrelax/homotopy.hpp"
#include "ccrelax/model.hpp"
#include "ccrelax/stationarity.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ccrelax {

// ---------------------------------------------------------------------------
// Instance generation and files
// ---------------------------------------------------------------------------

/// Factor-model generator: cov = A A' / k + 1e-3 I with A an n x k standard
/// normal matrix, mean entries uniform on [mean_low, mean_high], u = ubound * e.
struct GeneratorParams {
  int n = 10;
  int factors = 0;  // 0: max(n / 4, 2)
  double mean_low = 0.0;
  double mean_high = 0.1;
  double ubound = 1.0;
  int kappa = 0;    // 0: max(1, n / 10)
  std::uint64_t seed = 0;
};

PortfolioInstance generate_instance(const GeneratorParams& params);

std::string instance_to_json(const PortfolioInstance& inst);
PortfolioInstance instance_from_json(std::string_view text);
void save_instance(const PortfolioInstance& inst, const std::string& path);
PortfolioInstance load_instance(const std::string& path);

// ---------------------------------------------------------------------------
// Methods
// ---------------------------------------------------------------------------

enum class Method { Scholtes, KanzowSchwartz, Direct, Oracle };

/// A method together with its start vector y0. Tags: "scholtes_01",
/// "scholtes_00", "kanzow-schwartz_01", "kanzow-schwartz_00", "direct_01",
/// "direct_00", "oracle"; a bare family name means the y0 = e variant.
struct MethodTag {
  Method method = Method::Scholtes;
  StartY y0 = StartY::Ones;
};

std::string to_string(const MethodTag& tag);
MethodTag parse_method_tag(std::string_view text);

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

inline constexpr double kCardinalityTol = 1e-6;
inline constexpr double kBudgetTol = 1e-6;
inline constexpr double kBoxTol = 1e-8;
inline constexpr double kComplementarityTol = 1e-6;
inline constexpr double kBestTieTol = 1e-8;

struct RunRecord {
  std::string instance_id;
  std::string method;
  RiskKind measure = RiskKind::CVaR;
  double beta = 0.95;
  double objective = 0.0;
  double time_ms = 0.0;
  int cardinality = 0;
  bool feasible = false;
  std::optional<double> gap;
  std::optional<Stationarity> stationarity;
  std::string status;

  bool operator==(const RunRecord&) const = default;
};

inline constexpr std::string_view kRecordHeader =
    "instance_id,method,measure,beta,objective,time_ms,cardinality,feasible,"
    "gap,stationarity,status";

std::string records_to_csv(const std::vector<RunRecord>& records);
std::vector<RunRecord> records_from_csv(std::string_view text);

/// (f - f_best) / |f_best|; nullopt when f_best == 0. Throws UsageError when
/// f < f_best beyond rounding.
std::optional<double> relative_gap(double f, double f_best);

/// Fills gap for every feasible record against the minimum feasible
/// objective of its problem (instance_id, measure, beta); infeasible records
/// get no gap.
void assign_gaps(std::vector<RunRecord>& records);

// ---------------------------------------------------------------------------
// Single runs
// ---------------------------------------------------------------------------

struct RunOptions {
  HomotopySchedule schedule{};  // method and y0_mode are overwritten by the tag
  SolverOptions inner{};
  bool polish = false;
  int oracle_n_limit = 15;
};

enum class RunFailure { None, Usage, Infeasible, Numerical };

struct RunOutcome {
  RunRecord record;
  RunFailure failure = RunFailure::None;
  Vector x;
  Vector y;                        // empty for the oracle
  std::vector<HomotopyStep> steps; // empty for the oracle
};

/// Runs one method from x0 = 0 on (inst, measure, beta). Failures are folded
/// into record.status ("error: ...") and record.feasible = false.
RunOutcome run_method(const PortfolioInstance& inst, std::string instance_id,
                      const MethodTag& tag, const RiskSpec& spec,
                      const RunOptions& options = {});

// ---------------------------------------------------------------------------
// Performance profiles
// ---------------------------------------------------------------------------

inline constexpr double kInfiniteRatio = std::numeric_limits<double>::infinity();

struct ProfileCurve {
  std::string method;
  std::vector<std::pair<double, double>> points;  // (ratio, fraction <= ratio)
};

/// Step curves over problems keyed by (instance_id, measure, beta). The ratio
/// is 1 + relative gap against the best feasible objective of the problem;
/// infeasible and missing runs count as infinite. Throws UsageError on an
/// empty input or a problem without a feasible run.
std::vector<ProfileCurve> performance_profile(const std::vector<RunRecord>& records);

std::string profile_to_csv(const std::vector<ProfileCurve>& curves);

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

struct ExperimentConfig {
  std::vector<std::uint64_t> seeds;
  std::vector<int> sizes;
  std::vector<int> kappas;  // empty: generator default per size
  std::vector<MethodTag> methods;
  std::vector<RiskKind> measures;
  std::vector<double> betas;
  RunOptions options{};
  int oracle_max_n = 10;  // oracle rows are skipped above this size
};

/// JSON object with keys seeds, sizes, kappas, methods, measures, betas,
/// polish, oracle_max_n and schedule {t0, shrink, tol_comp, t_floor}.
ExperimentConfig config_from_json(std::string_view text);

struct GroupSummary {
  std::string method;
  RiskKind measure = RiskKind::CVaR;
  double beta = 0.0;
  int runs = 0;
  std::optional<double> average_gap;
  double average_time_ms = 0.0;
  int best_count = 0;
  int infeasible_count = 0;
};

struct ExperimentResult {
  std::vector<RunRecord> records;  // sorted by (instance, method, measure, beta)
  std::vector<GroupSummary> summary;
  std::vector<ProfileCurve> profile;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

std::vector<GroupSummary> summarize(const std::vector<RunRecord>& records);
std::string summary_to_csv(const std::vector<GroupSummary>& summary);

/// Writes records.csv, summary.csv and profile.csv into dir (created if needed).
void write_experiment(const ExperimentResult& result, const std::string& dir);

}  // namespace ccrelax
