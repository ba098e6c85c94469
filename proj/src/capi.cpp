/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#include "ccrelax/ccrelax.h"

#include "ccrelax/bench.hpp"
#include "ccrelax/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <new>
#include <optional>
#include <sstream>
#include <string>

struct ccr_instance {
  std::optional<ccrelax::PortfolioInstance> inst;
};

struct ccr_result {
  ccrelax::RunOutcome outcome;
  std::string stationarity;
  std::string csv_line;
};

namespace {

thread_local std::string g_last_error;

template <class F>
ccr_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return CCR_OK;
  } catch (const ccrelax::UsageError& e) {
    g_last_error = e.what();
    return CCR_USAGE;
  } catch (const ccrelax::InfeasibleError& e) {
    g_last_error = e.what();
    return CCR_INFEASIBLE;
  } catch (const ccrelax::NumericalError& e) {
    g_last_error = e.what();
    return CCR_NUMERICAL;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CCR_ERROR;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CCR_ERROR;
  } catch (...) {
    g_last_error = "unknown error";
    return CCR_ERROR;
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw ccrelax::UsageError(what);
}

std::string read_text(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ccrelax::UsageError(std::string("cannot open '") + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const char* path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ccrelax::UsageError(std::string("cannot write '") + path + "'");
  out << text;
}

std::vector<double> to_std(const ccrelax::Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

extern "C" {

const char* ccr_last_error(void) { return g_last_error.c_str(); }

const char* ccr_version(void) { return "0.1.0"; }

ccr_status ccr_risk_coefficient(const char* measure, double beta, double* out) {
  return guarded([&] {
    require(measure && out, "null argument");
    *out = ccrelax::risk_coefficient(ccrelax::parse_risk_kind(measure), beta);
  });
}

ccr_status ccr_instance_generate(int n, uint64_t seed, int kappa, ccr_instance** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = nullptr;
    ccrelax::GeneratorParams p;
    p.n = n;
    p.seed = seed;
    p.kappa = kappa > 0 ? kappa : 0;
    auto h = std::make_unique<ccr_instance>();
    h->inst = ccrelax::generate_instance(p);
    *out = h.release();
  });
}

ccr_status ccr_instance_create(int n, const double* mean, const double* cov,
                               const double* ubound, int kappa, ccr_instance** out) {
  return guarded([&] {
    require(out && mean && cov, "null argument");
    *out = nullptr;
    require(n >= 2, "n must be at least 2");
    ccrelax::Vector m = Eigen::Map<const ccrelax::Vector>(mean, n);
    ccrelax::Matrix q = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                       Eigen::RowMajor>>(cov, n, n);
    ccrelax::Vector u = ubound ? ccrelax::Vector(Eigen::Map<const ccrelax::Vector>(ubound, n))
                               : ccrelax::Vector::Ones(n);
    auto h = std::make_unique<ccr_instance>();
    h->inst.emplace(std::move(m), std::move(q), std::move(u), kappa);
    *out = h.release();
  });
}

ccr_status ccr_instance_load(const char* path, ccr_instance** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = nullptr;
    auto h = std::make_unique<ccr_instance>();
    h->inst = ccrelax::instance_from_json(read_text(path));
    *out = h.release();
  });
}

ccr_status ccr_instance_save(const ccr_instance* inst, const char* path) {
  return guarded([&] {
    require(inst && path, "null argument");
    write_text(path, ccrelax::instance_to_json(*inst->inst));
  });
}

ccr_status ccr_instance_set_kappa(ccr_instance* inst, int kappa) {
  return guarded([&] {
    require(inst, "null argument");
    inst->inst = inst->inst->with_kappa(kappa);
  });
}

int ccr_instance_n(const ccr_instance* inst) { return inst ? inst->inst->n() : 0; }

int ccr_instance_kappa(const ccr_instance* inst) { return inst ? inst->inst->kappa() : 0; }

void ccr_instance_free(ccr_instance* inst) { delete inst; }

void ccr_solve_options_default(ccr_solve_options* opts) {
  if (!opts) return;
  const ccrelax::HomotopySchedule s;
  opts->t0 = s.t0;
  opts->shrink = s.shrink;
  opts->tol_comp = s.tol_comp;
  opts->t_floor = s.t_floor;
  opts->polish = 0;
}

ccr_status ccr_solve(const ccr_instance* inst, const char* method, const char* measure,
                     double beta, const ccr_solve_options* opts, ccr_result** out) {
  return guarded([&] {
    require(inst && method && measure && out, "null argument");
    *out = nullptr;
    const ccrelax::MethodTag tag = ccrelax::parse_method_tag(method);
    const ccrelax::RiskSpec spec(ccrelax::parse_risk_kind(measure), beta);
    ccrelax::RunOptions ro;
    if (opts) {
      ro.schedule.t0 = opts->t0;
      ro.schedule.shrink = opts->shrink;
      ro.schedule.tol_comp = opts->tol_comp;
      ro.schedule.t_floor = opts->t_floor;
      ro.polish = opts->polish != 0;
    }
    ro.schedule.validate();
    auto h = std::make_unique<ccr_result>();
    h->outcome = ccrelax::run_method(*inst->inst, "instance", tag, spec, ro);
    const auto& rec = h->outcome.record;
    h->stationarity = rec.stationarity ? std::string(ccrelax::to_string(*rec.stationarity)) : "";
    std::string csv = ccrelax::records_to_csv({rec});
    csv = csv.substr(csv.find('\n') + 1);
    if (!csv.empty() && csv.back() == '\n') csv.pop_back();
    h->csv_line = csv;
    *out = h.release();
  });
}

double ccr_result_objective(const ccr_result* r) { return r ? r->outcome.record.objective : 0.0; }

double ccr_result_time_ms(const ccr_result* r) { return r ? r->outcome.record.time_ms : 0.0; }

int ccr_result_cardinality(const ccr_result* r) { return r ? r->outcome.record.cardinality : 0; }

int ccr_result_feasible(const ccr_result* r) { return r && r->outcome.record.feasible ? 1 : 0; }

ccr_status ccr_result_failure(const ccr_result* r) {
  if (!r) return CCR_USAGE;
  switch (r->outcome.failure) {
    case ccrelax::RunFailure::None: return CCR_OK;
    case ccrelax::RunFailure::Usage: return CCR_USAGE;
    case ccrelax::RunFailure::Infeasible: return CCR_INFEASIBLE;
    case ccrelax::RunFailure::Numerical: return CCR_NUMERICAL;
  }
  return CCR_ERROR;
}

const char* ccr_result_status(const ccr_result* r) {
  return r ? r->outcome.record.status.c_str() : "";
}

const char* ccr_result_stationarity(const ccr_result* r) {
  return r ? r->stationarity.c_str() : "";
}

int ccr_result_n(const ccr_result* r) {
  return r ? static_cast<int>(r->outcome.x.size()) : 0;
}

static ccr_status copy_vector(const ccrelax::Vector& v, double* buf, size_t len) {
  return guarded([&] {
    require(buf != nullptr || v.size() == 0, "null buffer");
    require(len >= static_cast<size_t>(v.size()), "buffer too small");
    for (Eigen::Index i = 0; i < v.size(); ++i) buf[i] = v[i];
  });
}

ccr_status ccr_result_x(const ccr_result* r, double* buf, size_t len) {
  if (!r) return guarded([] { require(false, "null argument"); });
  return copy_vector(r->outcome.x, buf, len);
}

ccr_status ccr_result_y(const ccr_result* r, double* buf, size_t len) {
  if (!r) return guarded([] { require(false, "null argument"); });
  return copy_vector(r->outcome.y, buf, len);
}

int ccr_result_num_steps(const ccr_result* r) {
  return r ? static_cast<int>(r->outcome.steps.size()) : 0;
}

ccr_status ccr_result_step(const ccr_result* r, int index, double* t, double* objective,
                           double* complementarity) {
  return guarded([&] {
    require(r, "null argument");
    require(index >= 0 && index < static_cast<int>(r->outcome.steps.size()),
            "step index out of range");
    const auto& s = r->outcome.steps[static_cast<size_t>(index)];
    if (t) *t = s.t;
    if (objective) *objective = s.objective;
    if (complementarity) *complementarity = s.complementarity;
  });
}

const char* ccr_result_record_csv(const ccr_result* r) { return r ? r->csv_line.c_str() : ""; }

ccr_status ccr_result_write_json(const ccr_result* r, const char* path) {
  return guarded([&] {
    require(r && path, "null argument");
    const auto& rec = r->outcome.record;
    nlohmann::json j;
    j["method"] = rec.method;
    j["measure"] = std::string(ccrelax::to_string(rec.measure));
    j["beta"] = rec.beta;
    j["objective"] = rec.objective;
    j["time_ms"] = rec.time_ms;
    j["cardinality"] = rec.cardinality;
    j["feasible"] = rec.feasible;
    j["stationarity"] = r->stationarity;
    j["status"] = rec.status;
    j["x"] = to_std(r->outcome.x);
    j["y"] = to_std(r->outcome.y);
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : r->outcome.steps) {
      steps.push_back({{"t", s.t},
                       {"status", std::string(ccrelax::to_string(s.status))},
                       {"objective", s.objective},
                       {"kkt_residual", s.kkt_residual},
                       {"complementarity", s.complementarity},
                       {"iterations", s.iterations}});
    }
    j["steps"] = steps;
    write_text(path, j.dump(1) + "\n");
  });
}

void ccr_result_free(ccr_result* r) { delete r; }

const char* ccr_records_header(void) { return ccrelax::kRecordHeader.data(); }

ccr_status ccr_bench_run(const char* config_path, const char* out_dir) {
  return guarded([&] {
    require(config_path && out_dir, "null argument");
    const auto cfg = ccrelax::config_from_json(read_text(config_path));
    ccrelax::write_experiment(ccrelax::run_experiment(cfg), out_dir);
  });
}

ccr_status ccr_profile_file(const char* records_path, const char* out_path) {
  return guarded([&] {
    require(records_path && out_path, "null argument");
    const auto records = ccrelax::records_from_csv(read_text(records_path));
    write_text(out_path, ccrelax::profile_to_csv(ccrelax::performance_profile(records)));
  });
}

}  // extern "C"
