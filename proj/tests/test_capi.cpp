/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#include "ccrelax/ccrelax.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

TEST(CApi, VersionAndCoefficient) {
  EXPECT_STREQ(ccr_version(), "0.1.0");
  double c = 0.0;
  ASSERT_EQ(ccr_risk_coefficient("rcvar", 0.99, &c), CCR_OK);
  EXPECT_NEAR(c, std::sqrt(99.0), 1e-12);
  EXPECT_EQ(ccr_risk_coefficient("foo", 0.99, &c), CCR_USAGE);
  EXPECT_STRNE(ccr_last_error(), "");
  EXPECT_EQ(ccr_risk_coefficient("VaR", 1.5, &c), CCR_USAGE);
}

TEST(CApi, InstanceLifecycle) {
  ccr_instance* inst = nullptr;
  ASSERT_EQ(ccr_instance_generate(8, 4, 0, &inst), CCR_OK);
  EXPECT_EQ(ccr_instance_n(inst), 8);
  EXPECT_EQ(ccr_instance_kappa(inst), 1);
  EXPECT_EQ(ccr_instance_set_kappa(inst, 3), CCR_OK);
  EXPECT_EQ(ccr_instance_set_kappa(inst, 8), CCR_USAGE);
  const std::string path = ::testing::TempDir() + "ccrelax_capi_inst.json";
  ASSERT_EQ(ccr_instance_save(inst, path.c_str()), CCR_OK);
  ccr_instance* back = nullptr;
  ASSERT_EQ(ccr_instance_load(path.c_str(), &back), CCR_OK);
  EXPECT_EQ(ccr_instance_kappa(back), 3);
  ccr_instance_free(back);
  ccr_instance_free(inst);
  ccr_instance_free(nullptr);
  std::remove(path.c_str());
  EXPECT_EQ(ccr_instance_load("/nonexistent.json", &back), CCR_USAGE);
}

TEST(CApi, CreateValidates) {
  const double mean[2] = {0.0, 0.0};
  const double cov[4] = {1.0, 0.0, 0.0, 1.0};
  const double bad[4] = {1.0, 0.0, 0.0, -1.0};
  ccr_instance* inst = nullptr;
  ASSERT_EQ(ccr_instance_create(2, mean, cov, nullptr, 1, &inst), CCR_OK);
  ccr_instance_free(inst);
  EXPECT_EQ(ccr_instance_create(2, mean, bad, nullptr, 1, &inst), CCR_USAGE);
  EXPECT_EQ(ccr_instance_create(2, nullptr, cov, nullptr, 1, &inst), CCR_USAGE);
}

TEST(CApi, SolveAndInspect) {
  ccr_instance* inst = nullptr;
  ASSERT_EQ(ccr_instance_generate(6, 2, 2, &inst), CCR_OK);
  ccr_solve_options opts;
  ccr_solve_options_default(&opts);
  EXPECT_EQ(opts.t0, 1.0);
  EXPECT_EQ(opts.shrink, 0.01);
  ccr_result* res = nullptr;
  ASSERT_EQ(ccr_solve(inst, "scholtes_01", "CVaR", 0.95, &opts, &res), CCR_OK);
  EXPECT_TRUE(ccr_result_feasible(res));
  EXPECT_EQ(ccr_result_failure(res), CCR_OK);
  EXPECT_LE(ccr_result_cardinality(res), 2);
  EXPECT_EQ(ccr_result_n(res), 6);
  std::vector<double> x(6), y(6);
  ASSERT_EQ(ccr_result_x(res, x.data(), x.size()), CCR_OK);
  ASSERT_EQ(ccr_result_y(res, y.data(), y.size()), CCR_OK);
  double sum = 0.0;
  for (double v : x) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-6);
  EXPECT_EQ(ccr_result_x(res, x.data(), 3), CCR_USAGE);
  const int steps = ccr_result_num_steps(res);
  ASSERT_GE(steps, 1);
  double t = 0, f = 0, comp = 0;
  ASSERT_EQ(ccr_result_step(res, 0, &t, &f, &comp), CCR_OK);
  EXPECT_EQ(t, 1.0);
  EXPECT_EQ(ccr_result_step(res, steps, &t, &f, &comp), CCR_USAGE);
  const std::string line = ccr_result_record_csv(res);
  EXPECT_EQ(line.rfind("", 0), 0u);
  EXPECT_NE(line.find("scholtes_01"), std::string::npos);
  const std::string st = ccr_result_stationarity(res);
  EXPECT_TRUE(st == "S" || st == "M");
  ccr_result_free(res);

  ASSERT_EQ(ccr_solve(inst, "oracle", "CVaR", 0.95, nullptr, &res), CCR_OK);
  EXPECT_STREQ(ccr_result_status(res), "optimal");
  EXPECT_EQ(ccr_result_num_steps(res), 0);
  ccr_result_free(res);

  EXPECT_EQ(ccr_solve(inst, "snopt", "CVaR", 0.95, nullptr, &res), CCR_USAGE);
  EXPECT_EQ(ccr_solve(nullptr, "oracle", "CVaR", 0.95, nullptr, &res), CCR_USAGE);
  ccr_instance_free(inst);
}

TEST(CApi, RecordsHeader) {
  EXPECT_STREQ(ccr_records_header(),
               "instance_id,method,measure,beta,objective,time_ms,cardinality,feasible,gap,"
               "stationarity,status");
  EXPECT_EQ(ccr_bench_run("/nonexistent.json", "/tmp"), CCR_USAGE);
}
