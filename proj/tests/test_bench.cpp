/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#include "ccrelax/bench.hpp"
#include "ccrelax/errors.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

using namespace ccrelax;

namespace {

RunRecord rec(const std::string& id, const std::string& method, double f, bool feasible) {
  RunRecord r;
  r.instance_id = id;
  r.method = method;
  r.objective = f;
  r.feasible = feasible;
  r.status = "converged";
  return r;
}

}  // namespace

TEST(Generator, DeterministicAndWellFormed) {
  GeneratorParams p;
  p.n = 12;
  p.seed = 99;
  const auto a = generate_instance(p);
  const auto b = generate_instance(p);
  EXPECT_EQ(a.cov(), b.cov());
  EXPECT_EQ(a.mean(), b.mean());
  EXPECT_EQ(a.kappa(), 1);
  EXPECT_TRUE(a.ubound().isOnes());
  EXPECT_TRUE((a.mean().array() >= 0.0).all() && (a.mean().array() <= 0.1).all());
  EXPECT_TRUE(a.cov().isApprox(a.cov().transpose()));
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.cov());
  EXPECT_GE(es.eigenvalues().minCoeff(), 1e-3 - 1e-12);
  p.seed = 100;
  EXPECT_NE(generate_instance(p).cov(), a.cov());
}

TEST(Generator, InstanceJsonRoundTrip) {
  GeneratorParams p;
  p.n = 5;
  p.kappa = 2;
  p.seed = 3;
  const auto a = generate_instance(p);
  const auto b = instance_from_json(instance_to_json(a));
  EXPECT_EQ(a.mean(), b.mean());
  EXPECT_EQ(a.cov(), b.cov());
  EXPECT_EQ(a.ubound(), b.ubound());
  EXPECT_EQ(a.kappa(), b.kappa());
  const auto path = std::filesystem::temp_directory_path() / "ccrelax_inst_test.json";
  save_instance(a, path.string());
  EXPECT_EQ(load_instance(path.string()).cov(), a.cov());
  std::filesystem::remove(path);
  EXPECT_THROW(instance_from_json("{\"n\": 2}"), UsageError);
  EXPECT_THROW(load_instance("/nonexistent/ccrelax.json"), UsageError);
}

TEST(MethodTags, ParseAndPrint) {
  for (const char* t : {"scholtes_01", "scholtes_00", "kanzow-schwartz_01", "kanzow-schwartz_00",
                        "direct_01", "direct_00", "oracle"}) {
    EXPECT_EQ(to_string(parse_method_tag(t)), t);
  }
  EXPECT_EQ(to_string(parse_method_tag("Scholtes")), "scholtes_01");
  EXPECT_THROW(parse_method_tag("snopt"), UsageError);
}

TEST(Records, CsvRoundTrip) {
  std::vector<RunRecord> rs = {rec("a", "scholtes_01", 0.1 + 0.2, true), rec("b", "oracle", -1e-300, true)};
  rs[0].gap = 1.0 / 3.0;
  rs[0].stationarity = Stationarity::M;
  rs[0].time_ms = 12.5;
  rs[0].cardinality = 2;
  rs[1].measure = RiskKind::RCVaR;
  rs[1].beta = 0.99;
  rs.push_back(rec("c", "direct_00", std::numeric_limits<double>::infinity(), false));
  rs[2].status = "error: bad things";
  const std::string csv = records_to_csv(rs);
  EXPECT_EQ(csv.substr(0, kRecordHeader.size()), kRecordHeader);
  EXPECT_EQ(records_from_csv(csv), rs);
  rs[0].status = "a,b";
  EXPECT_THROW(records_to_csv(rs), UsageError);
}

TEST(Gaps, RelativeGap) {
  EXPECT_DOUBLE_EQ(*relative_gap(3.0, 2.0), 0.5);
  EXPECT_DOUBLE_EQ(*relative_gap(-1.0, -2.0), 0.5);
  EXPECT_FALSE(relative_gap(1.0, 0.0).has_value());
  EXPECT_EQ(*relative_gap(2.0, 2.0), 0.0);
  EXPECT_THROW(relative_gap(1.0, 2.0), UsageError);
}

TEST(Gaps, AssignPerProblem) {
  std::vector<RunRecord> rs = {rec("p", "A", 2.0, true), rec("p", "B", 3.0, true),
                               rec("p", "C", 1.0, false), rec("q", "A", 5.0, true)};
  assign_gaps(rs);
  EXPECT_DOUBLE_EQ(*rs[0].gap, 0.0);
  EXPECT_DOUBLE_EQ(*rs[1].gap, 0.5);
  EXPECT_FALSE(rs[2].gap.has_value());
  EXPECT_DOUBLE_EQ(*rs[3].gap, 0.0);
}

TEST(Profile, MonotoneStepCurves) {
  std::vector<RunRecord> rs;
  for (int p = 0; p < 6; ++p) {
    const std::string id = "p" + std::to_string(p);
    rs.push_back(rec(id, "A", 1.0 + p, true));
    rs.push_back(rec(id, "B", 1.0 + 0.5 * p, p % 2 == 0));
  }
  const auto curves = performance_profile(rs);
  ASSERT_EQ(curves.size(), 2u);
  for (const auto& c : curves) {
    for (std::size_t k = 1; k < c.points.size(); ++k) {
      EXPECT_LT(c.points[k - 1].first, c.points[k].first);
      EXPECT_LT(c.points[k - 1].second, c.points[k].second);
    }
    EXPECT_GE(c.points.front().first, 1.0);
    EXPECT_LE(c.points.back().second, 1.0);
  }
  EXPECT_NE(profile_to_csv(curves).find("method,ratio,fraction"), std::string::npos);
  EXPECT_THROW(performance_profile({}), UsageError);
  EXPECT_THROW(performance_profile({rec("z", "A", 1.0, false)}), UsageError);
}

TEST(RunMethod, AllTagsProduceRecords) {
  GeneratorParams p;
  p.n = 6;
  p.kappa = 2;
  p.seed = 17;
  const auto inst = generate_instance(p);
  const RiskSpec spec(RiskKind::CVaR, 0.95);
  const auto orc = run_method(inst, "x", parse_method_tag("oracle"), spec);
  ASSERT_TRUE(orc.record.feasible);
  EXPECT_EQ(orc.record.status, "optimal");
  for (const char* t : {"scholtes_01", "scholtes_00", "kanzow-schwartz_01", "direct_01"}) {
    const auto out = run_method(inst, "x", parse_method_tag(t), spec);
    EXPECT_EQ(out.record.method, t);
    EXPECT_EQ(out.record.instance_id, "x");
    if (out.record.feasible) {
      EXPECT_LE(out.record.cardinality, 2);
      EXPECT_GE(out.record.objective, orc.record.objective - 1e-6) << t;
      EXPECT_NEAR(out.x.sum(), 1.0, kBudgetTol);
    }
  }
  RunOptions po;
  po.polish = true;
  const auto pol = run_method(inst, "x", parse_method_tag("scholtes_01"), spec, po);
  EXPECT_TRUE(pol.record.feasible);
}

TEST(Experiment, ConfigAndRun) {
  const ExperimentConfig cfg = config_from_json(R"({
    "seeds": [1, 2], "sizes": [6], "kappas": [2],
    "methods": ["scholtes_01", "oracle"], "measures": ["CVaR"], "betas": [0.9],
    "schedule": {"t0": 1.0, "shrink": 0.01}
  })");
  EXPECT_EQ(cfg.seeds.size(), 2u);
  const ExperimentResult res = run_experiment(cfg);
  EXPECT_EQ(res.records.size(), 4u);
  std::set<std::string> ids;
  for (const auto& r : res.records) ids.insert(r.instance_id);
  EXPECT_EQ(ids, (std::set<std::string>{"n6-k2-s1", "n6-k2-s2"}));
  for (const auto& r : res.records) {
    if (r.method == "oracle") EXPECT_DOUBLE_EQ(*r.gap, 0.0);
  }
  EXPECT_EQ(res.summary.size(), 2u);
  const auto dir = std::filesystem::temp_directory_path() / "ccrelax_exp_test";
  write_experiment(res, dir.string());
  for (const char* f : {"records.csv", "summary.csv", "profile.csv"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  std::ifstream in(dir / "records.csv");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(records_from_csv(text), res.records);
  std::filesystem::remove_all(dir);
  EXPECT_THROW(config_from_json("{\"seeds\": [1]}"), UsageError);
}

TEST(Summary, BestCountsFeasibleAndTies) {
  std::vector<RunRecord> rs = {rec("p", "A", 1.0, true), rec("p", "B", 1.0 + 5e-9, true),
                               rec("p", "C", 0.5, false), rec("q", "A", 2.0, true),
                               rec("q", "B", 1.0, true)};
  assign_gaps(rs);
  for (const auto& g : summarize(rs)) {
    if (g.method == "A") EXPECT_EQ(g.best_count, 1);
    if (g.method == "B") EXPECT_EQ(g.best_count, 2);
    if (g.method == "C") {
      EXPECT_EQ(g.best_count, 0);
      EXPECT_EQ(g.infeasible_count, 1);
      EXPECT_FALSE(g.average_gap.has_value());
    }
  }
}

TEST(RunMethod, FeasibilityThresholds) {
  // Oracle never beaten on small instances; cardinality counted above 1e-6.
  for (std::uint64_t seed : {41u, 42u}) {
    GeneratorParams p;
    p.n = 8;
    p.kappa = 3;
    p.seed = seed;
    const auto inst = generate_instance(p);
    const RiskSpec spec(RiskKind::RVaR, 0.95);
    const double best = run_method(inst, "x", parse_method_tag("oracle"), spec).record.objective;
    for (const char* t : {"scholtes_01", "kanzow-schwartz_00", "direct_01"}) {
      const auto out = run_method(inst, "x", parse_method_tag(t), spec);
      EXPECT_EQ(out.record.cardinality, cardinality(out.x, kCardinalityTol));
      if (out.record.feasible) {
        EXPECT_GE(out.record.objective, best - 1e-6) << t;
        EXPECT_LE(out.x.cwiseProduct(out.y).cwiseAbs().maxCoeff(), kComplementarityTol);
      }
    }
  }
}
