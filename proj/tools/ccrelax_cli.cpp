/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#include "ccrelax/ccrelax.h"

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

namespace {

using InstancePtr = std::unique_ptr<ccr_instance, decltype(&ccr_instance_free)>;
using ResultPtr = std::unique_ptr<ccr_result, decltype(&ccr_result_free)>;

int fail(ccr_status st) {
  std::fprintf(stderr, "ccrelax: %s\n", ccr_last_error());
  return static_cast<int>(st);
}

int load(const std::string& path, int kappa, InstancePtr& out) {
  ccr_instance* raw = nullptr;
  if (ccr_status st = ccr_instance_load(path.c_str(), &raw); st != CCR_OK) return fail(st);
  out.reset(raw);
  if (kappa > 0) {
    if (ccr_status st = ccr_instance_set_kappa(out.get(), kappa); st != CCR_OK) return fail(st);
  }
  return 0;
}

int report(const ResultPtr& res, const std::string& out) {
  std::printf("%s\n%s\n", ccr_records_header(), ccr_result_record_csv(res.get()));
  if (!out.empty()) {
    if (ccr_status st = ccr_result_write_json(res.get(), out.c_str()); st != CCR_OK) return fail(st);
  }
  if (ccr_status st = ccr_result_failure(res.get()); st != CCR_OK) {
    std::fprintf(stderr, "ccrelax: %s\n", ccr_result_status(res.get()));
    return static_cast<int>(st);
  }
  return ccr_result_feasible(res.get()) ? 0 : static_cast<int>(CCR_INFEASIBLE);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cardinality-constrained portfolio optimization by regularization homotopies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ccr_version());

  // generate
  auto* gen = app.add_subcommand("generate", "Write a random factor-model instance");
  int gen_n = 0;
  uint64_t gen_seed = 0;
  int gen_kappa = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "Number of assets")->required()->check(CLI::Range(2, 1 << 20));
  gen->add_option("--seed", gen_seed, "Random seed")->required();
  gen->add_option("--out", gen_out, "Output JSON file")->required();
  gen->add_option("--kappa", gen_kappa, "Cardinality budget (default max(1, n/10))");

  // solve
  auto* sol = app.add_subcommand("solve", "Run one method on an instance");
  std::string sol_instance, sol_method = "scholtes", sol_measure = "CVaR", sol_y0 = "ones", sol_out;
  double sol_beta = 0.95;
  int sol_kappa = 0;
  bool sol_polish = false;
  ccr_solve_options opts;
  ccr_solve_options_default(&opts);
  sol->add_option("--instance", sol_instance, "Instance JSON file")->required();
  sol->add_option("--method", sol_method, "scholtes | kanzow-schwartz | direct | oracle")
      ->capture_default_str();
  sol->add_option("--measure", sol_measure, "VaR | CVaR | RVaR | RCVaR")->capture_default_str();
  sol->add_option("--beta", sol_beta, "Confidence level in (0.5, 1)")->capture_default_str();
  sol->add_option("--kappa", sol_kappa, "Override the instance cardinality budget");
  sol->add_option("--y0", sol_y0, "Start vector for y")
      ->check(CLI::IsMember({"ones", "zeros"}))
      ->capture_default_str();
  sol->add_option("--t0", opts.t0, "Initial regularization parameter")->capture_default_str();
  sol->add_option("--shrink", opts.shrink, "Factor applied to t per step")->capture_default_str();
  sol->add_option("--tol-comp", opts.tol_comp, "Complementarity stop")->capture_default_str();
  sol->add_option("--t-floor", opts.t_floor, "Smallest t")->capture_default_str();
  sol->add_flag("--polish", sol_polish, "Re-solve on the selected support");
  sol->add_option("--out", sol_out, "Write the result as JSON");

  // oracle
  auto* orc = app.add_subcommand("oracle", "Global optimum by support enumeration");
  std::string orc_instance, orc_measure = "CVaR", orc_out;
  double orc_beta = 0.95;
  int orc_kappa = 0;
  orc->add_option("--instance", orc_instance, "Instance JSON file")->required();
  orc->add_option("--measure", orc_measure, "VaR | CVaR | RVaR | RCVaR")->capture_default_str();
  orc->add_option("--beta", orc_beta, "Confidence level in (0.5, 1)")->capture_default_str();
  orc->add_option("--kappa", orc_kappa, "Override the instance cardinality budget");
  orc->add_option("--out", orc_out, "Write the result as JSON");

  // bench
  auto* bench = app.add_subcommand("bench", "Run an experiment described by a JSON config");
  std::string bench_config, bench_out;
  bench->add_option("--config", bench_config, "Experiment config (JSON)")->required();
  bench->add_option("--out-dir", bench_out, "Directory for records, summary and profile")
      ->required();

  // profile
  auto* prof = app.add_subcommand("profile", "Performance profile from a records CSV");
  std::string prof_records, prof_out;
  prof->add_option("--records", prof_records, "Records CSV")->required();
  prof->add_option("--out", prof_out, "Profile CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(CCR_USAGE);
  }

  if (gen->parsed()) {
    ccr_instance* raw = nullptr;
    if (ccr_status st = ccr_instance_generate(gen_n, gen_seed, gen_kappa, &raw); st != CCR_OK) {
      return fail(st);
    }
    InstancePtr inst(raw, &ccr_instance_free);
    if (ccr_status st = ccr_instance_save(inst.get(), gen_out.c_str()); st != CCR_OK) return fail(st);
    return 0;
  }

  if (sol->parsed() || orc->parsed()) {
    const bool is_oracle = orc->parsed();
    InstancePtr inst(nullptr, &ccr_instance_free);
    if (int rc = load(is_oracle ? orc_instance : sol_instance, is_oracle ? orc_kappa : sol_kappa,
                      inst)) {
      return rc;
    }
    std::string tag = "oracle";
    if (!is_oracle && sol_method != "oracle") {
      tag = sol_method;
      if (tag.find('_') == std::string::npos) tag += sol_y0 == "ones" ? "_01" : "_00";
    }
    opts.polish = sol_polish ? 1 : 0;
    ccr_result* raw = nullptr;
    const std::string& measure = is_oracle ? orc_measure : sol_measure;
    const double beta = is_oracle ? orc_beta : sol_beta;
    if (ccr_status st = ccr_solve(inst.get(), tag.c_str(), measure.c_str(), beta, &opts, &raw);
        st != CCR_OK) {
      return fail(st);
    }
    ResultPtr res(raw, &ccr_result_free);
    return report(res, is_oracle ? orc_out : sol_out);
  }

  if (bench->parsed()) {
    if (ccr_status st = ccr_bench_run(bench_config.c_str(), bench_out.c_str()); st != CCR_OK) {
      return fail(st);
    }
    return 0;
  }

  if (prof->parsed()) {
    if (ccr_status st = ccr_profile_file(prof_records.c_str(), prof_out.c_str()); st != CCR_OK) {
      return fail(st);
    }
    return 0;
  }
  return static_cast<int>(CCR_USAGE);
}
