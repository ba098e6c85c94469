/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#include "ccrelax/bench.hpp"

#include "ccrelax/errors.hpp"
#include "ccrelax/oracle.hpp"
#include "ccrelax/reformulate.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

namespace ccrelax {

using nlohmann::json;

PortfolioInstance generate_instance(const GeneratorParams& params) {
  const int n = params.n;
  if (n < 2) throw UsageError("generate_instance: n must be at least 2");
  if (params.factors < 0) throw UsageError("generate_instance: negative factor count");
  if (!(params.mean_low <= params.mean_high)) {
    throw UsageError("generate_instance: empty mean range");
  }
  const int k = params.factors > 0 ? params.factors : std::max(n / 4, 2);
  const int kappa = params.kappa > 0 ? params.kappa : std::max(1, n / 10);

  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> normal;
  Matrix A(n, k);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) A(i, j) = normal(rng);
  }
  std::uniform_real_distribution<double> uniform(params.mean_low, params.mean_high);
  Vector mean(n);
  for (int i = 0; i < n; ++i) mean[i] = uniform(rng);

  Matrix cov = A * A.transpose() / static_cast<double>(k);
  cov.diagonal().array() += 1e-3;
  return PortfolioInstance(std::move(mean), std::move(cov),
                           Vector::Constant(n, params.ubound), kappa);
}

namespace {

json vector_json(const Vector& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Vector json_vector(const json& j, const char* what) {
  if (!j.is_array()) throw UsageError(std::string("instance: '") + what + "' must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
  if (!out) throw UsageError("write failed for '" + path + "'");
}

}  // namespace

std::string instance_to_json(const PortfolioInstance& inst) {
  json j;
  j["n"] = inst.n();
  j["kappa"] = inst.kappa();
  j["mean"] = vector_json(inst.mean());
  json cov = json::array();
  for (int i = 0; i < inst.n(); ++i) cov.push_back(vector_json(inst.cov().row(i).transpose()));
  j["cov"] = cov;
  j["ubound"] = vector_json(inst.ubound());
  return j.dump(1) + "\n";
}

PortfolioInstance instance_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("instance: ") + e.what());
  }
  try {
    const Vector mean = json_vector(j.at("mean"), "mean");
    const json& rows = j.at("cov");
    const auto n = mean.size();
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) {
      throw UsageError("instance: 'cov' must have n rows");
    }
    Matrix cov(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Vector row = json_vector(rows[static_cast<std::size_t>(i)], "cov");
      if (row.size() != n) throw UsageError("instance: 'cov' must be square");
      cov.row(i) = row.transpose();
    }
    const Vector ub = j.contains("ubound") ? json_vector(j["ubound"], "ubound")
                                           : Vector::Ones(n);
    const int kappa = j.value("kappa", std::max(1, static_cast<int>(n) / 10));
    return PortfolioInstance(mean, cov, ub, kappa);
  } catch (const json::exception& e) {
    throw UsageError(std::string("instance: ") + e.what());
  }
}

void save_instance(const PortfolioInstance& inst, const std::string& path) {
  write_file(path, instance_to_json(inst));
}

PortfolioInstance load_instance(const std::string& path) {
  return instance_from_json(read_file(path));
}

// ---------------------------------------------------------------------------

std::string to_string(const MethodTag& tag) {
  std::string base;
  switch (tag.method) {
    case Method::Oracle: return "oracle";
    case Method::Scholtes: base = "scholtes"; break;
    case Method::KanzowSchwartz: base = "kanzow-schwartz"; break;
    case Method::Direct: base = "direct"; break;
  }
  return base + (tag.y0 == StartY::Ones ? "_01" : "_00");
}

MethodTag parse_method_tag(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "oracle") return {Method::Oracle, StartY::Ones};
  StartY y0 = StartY::Ones;
  std::string base = s;
  if (const auto pos = s.rfind('_'); pos != std::string::npos) {
    const std::string suffix = s.substr(pos + 1);
    base = s.substr(0, pos);
    if (suffix == "01") {
      y0 = StartY::Ones;
    } else if (suffix == "00") {
      y0 = StartY::Zeros;
    } else {
      throw UsageError("unknown method tag '" + std::string(text) + "'");
    }
  }
  if (base == "scholtes") return {Method::Scholtes, y0};
  if (base == "kanzow-schwartz") return {Method::KanzowSchwartz, y0};
  if (base == "direct") return {Method::Direct, y0};
  throw UsageError("unknown method tag '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------

namespace {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("records: bad number '" + s + "'");
  }
  if (used != s.size()) throw UsageError("records: bad number '" + s + "'");
  return v;
}

void check_field(const std::string& s) {
  if (s.find_first_of(",\n\r\"") != std::string::npos) {
    throw UsageError("records: field '" + s + "' contains a separator");
  }
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

Stationarity parse_stationarity(const std::string& s) {
  if (s == "S") return Stationarity::S;
  if (s == "M") return Stationarity::M;
  if (s == "None") return Stationarity::None;
  throw UsageError("records: bad stationarity '" + s + "'");
}

}  // namespace

std::string records_to_csv(const std::vector<RunRecord>& records) {
  std::string out(kRecordHeader);
  out += '\n';
  for (const auto& r : records) {
    check_field(r.instance_id);
    check_field(r.method);
    check_field(r.status);
    out += r.instance_id + ',' + r.method + ',' + std::string(to_string(r.measure)) + ',' +
           format_double(r.beta) + ',' + format_double(r.objective) + ',' +
           format_double(r.time_ms) + ',' + std::to_string(r.cardinality) + ',' +
           (r.feasible ? "true" : "false") + ',' +
           (r.gap ? format_double(*r.gap) : std::string()) + ',' +
           (r.stationarity ? std::string(to_string(*r.stationarity)) : std::string()) + ',' +
           r.status + '\n';
  }
  return out;
}

std::vector<RunRecord> records_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw UsageError("records: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordHeader) throw UsageError("records: unexpected header");
  std::vector<RunRecord> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_line(line);
    if (f.size() != 11) {
      throw UsageError("records: line " + std::to_string(lineno) + " has " +
                       std::to_string(f.size()) + " fields");
    }
    RunRecord r;
    r.instance_id = f[0];
    r.method = f[1];
    r.measure = parse_risk_kind(f[2]);
    r.beta = parse_double(f[3]);
    r.objective = parse_double(f[4]);
    r.time_ms = parse_double(f[5]);
    try {
      r.cardinality = std::stoi(f[6]);
    } catch (const std::exception&) {
      throw UsageError("records: bad cardinality '" + f[6] + "'");
    }
    if (f[7] != "true" && f[7] != "false") throw UsageError("records: bad feasible flag");
    r.feasible = f[7] == "true";
    if (!f[8].empty()) r.gap = parse_double(f[8]);
    if (!f[9].empty()) r.stationarity = parse_stationarity(f[9]);
    r.status = f[10];
    out.push_back(std::move(r));
  }
  return out;
}

std::optional<double> relative_gap(double f, double f_best) {
  if (f_best == 0.0) return std::nullopt;
  const double scale = std::abs(f_best);
  const double gap = (f - f_best) / scale;
  if (gap < -1e-12) throw UsageError("relative_gap: f is below f_best");
  return std::max(gap, 0.0);
}

namespace {

using ProblemKey = std::tuple<std::string, RiskKind, double>;

ProblemKey key_of(const RunRecord& r) { return {r.instance_id, r.measure, r.beta}; }

std::map<ProblemKey, double> best_feasible(const std::vector<RunRecord>& records) {
  std::map<ProblemKey, double> best;
  for (const auto& r : records) {
    if (!r.feasible) continue;
    auto [it, inserted] = best.try_emplace(key_of(r), r.objective);
    if (!inserted) it->second = std::min(it->second, r.objective);
  }
  return best;
}

}  // namespace

void assign_gaps(std::vector<RunRecord>& records) {
  const auto best = best_feasible(records);
  for (auto& r : records) {
    r.gap.reset();
    if (!r.feasible) continue;
    r.gap = relative_gap(r.objective, best.at(key_of(r)));
  }
}

// ---------------------------------------------------------------------------

namespace {

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  }
  return s;
}

bool portfolio_feasible(const PortfolioInstance& inst, const Vector& x) {
  if (x.size() != inst.n() || !x.allFinite()) return false;
  if (std::abs(x.sum() - 1.0) > kBudgetTol) return false;
  for (int i = 0; i < inst.n(); ++i) {
    if (x[i] < -kBoxTol || x[i] > inst.ubound()[i] + kBoxTol) return false;
  }
  return cardinality(x, kCardinalityTol) <= inst.kappa();
}

}  // namespace

RunOutcome run_method(const PortfolioInstance& inst, std::string instance_id,
                      const MethodTag& tag, const RiskSpec& spec,
                      const RunOptions& options) {
  RunOutcome out;
  RunRecord& rec = out.record;
  rec.instance_id = std::move(instance_id);
  rec.method = to_string(tag);
  rec.measure = spec.kind;
  rec.beta = spec.beta;
  rec.objective = std::numeric_limits<double>::infinity();

  const auto start = std::chrono::steady_clock::now();
  const int n = inst.n();
  const int kappa = inst.kappa();
  const SmoothProgram prog = portfolio_program(inst, spec);
  bool comp_ok = true;
  try {
    if (tag.method == Method::Oracle) {
      const OracleResult o =
          enumerate_supports(prog, kappa, options.oracle_n_limit, options.inner);
      out.x = o.x;
      rec.status = "optimal";
    } else {
      const Vector x0 = Vector::Zero(n);
      HomotopyResult h;
      if (tag.method == Method::Direct) {
        h = run_direct(prog, kappa, tag.y0, x0, options.schedule.tol_comp, options.inner);
      } else {
        HomotopySchedule sched = options.schedule;
        sched.method.variant = tag.method == Method::Scholtes
                                   ? Regularization::Scholtes
                                   : Regularization::KanzowSchwartz;
        sched.method.nonneg_x = true;
        sched.y0_mode = tag.y0;
        h = run_homotopy(prog, kappa, sched, x0, options.inner);
      }
      out.x = h.pair.x;
      out.y = h.pair.y;
      out.steps = std::move(h.per_step);
      rec.status = std::string(to_string(h.status));
      comp_ok = out.x.cwiseProduct(out.y).lpNorm<Eigen::Infinity>() <= kComplementarityTol;
      if (options.polish) {
        const PolishResult p = polish(prog, kappa, h.pair, kCardinalityTol, options.inner);
        out.x = p.x;
        out.y = recover_y(out.x, kappa, kCardinalityTol);
        comp_ok = true;
      }
    }
  } catch (const InfeasibleError& e) {
    rec.status = sanitize(std::string("infeasible: ") + e.what());
    out.failure = RunFailure::Infeasible;
  } catch (const UsageError& e) {
    rec.status = sanitize(std::string("error: ") + e.what());
    out.failure = RunFailure::Usage;
  } catch (const Error& e) {
    rec.status = sanitize(std::string("error: ") + e.what());
    out.failure = RunFailure::Numerical;
  }
  rec.time_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  if (out.x.size() != n) return out;

  rec.objective = risk_value(inst, spec, out.x);
  rec.cardinality = cardinality(out.x, kCardinalityTol);
  rec.feasible = comp_ok && portfolio_feasible(inst, out.x);

  IteratePair pair;
  if (out.y.size() == n) {
    pair = IteratePair(out.x, out.y);
  } else if (rec.cardinality <= kappa) {
    pair = IteratePair(out.x, recover_y(out.x, kappa, kCardinalityTol));
  }
  if (pair.n() == n && reformulation_feasible(prog, kappa, pair, kDefaultActiveTol)) {
    try {
      rec.stationarity = classify(prog, kappa, pair).classification;
    } catch (const Error&) {
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<ProfileCurve> performance_profile(const std::vector<RunRecord>& records) {
  if (records.empty()) throw UsageError("performance_profile: no records");
  const auto best = best_feasible(records);
  std::map<ProblemKey, bool> problems;
  std::map<std::string, std::map<ProblemKey, double>> ratios;
  for (const auto& r : records) problems[key_of(r)] = true;
  for (const auto& [key, unused] : problems) {
    if (!best.count(key)) {
      throw UsageError("performance_profile: problem '" + std::get<0>(key) +
                       "' has no feasible run");
    }
  }
  for (const auto& r : records) {
    double ratio = kInfiniteRatio;
    if (r.feasible) {
      const double fb = best.at(key_of(r));
      if (const auto gap = relative_gap(r.objective, fb)) {
        ratio = 1.0 + *gap;
      } else if (r.objective <= fb + kBestTieTol) {
        ratio = 1.0;
      }
    }
    auto [it, inserted] = ratios[r.method].try_emplace(key_of(r), ratio);
    if (!inserted) it->second = std::min(it->second, ratio);
  }

  const auto total = static_cast<double>(problems.size());
  std::vector<ProfileCurve> curves;
  for (const auto& [method, per_problem] : ratios) {
    std::vector<double> finite;
    for (const auto& [key, ratio] : per_problem) {
      if (std::isfinite(ratio)) finite.push_back(ratio);
    }
    std::sort(finite.begin(), finite.end());
    ProfileCurve curve{method, {}};
    for (std::size_t i = 0; i < finite.size(); ++i) {
      if (i + 1 < finite.size() && finite[i + 1] == finite[i]) continue;
      curve.points.emplace_back(finite[i], static_cast<double>(i + 1) / total);
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::string profile_to_csv(const std::vector<ProfileCurve>& curves) {
  std::string out = "method,ratio,fraction\n";
  for (const auto& c : curves) {
    for (const auto& [x, y] : c.points) {
      out += c.method + ',' + format_double(x) + ',' + format_double(y) + '\n';
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

ExperimentConfig config_from_json(std::string_view text) {
  ExperimentConfig cfg;
  try {
    const json j = json::parse(text);
    cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    cfg.sizes = j.at("sizes").get<std::vector<int>>();
    cfg.kappas = j.value("kappas", std::vector<int>{});
    for (const auto& m : j.at("methods")) cfg.methods.push_back(parse_method_tag(m.get<std::string>()));
    for (const auto& m : j.at("measures")) cfg.measures.push_back(parse_risk_kind(m.get<std::string>()));
    cfg.betas = j.at("betas").get<std::vector<double>>();
    cfg.options.polish = j.value("polish", false);
    cfg.oracle_max_n = j.value("oracle_max_n", cfg.oracle_max_n);
    if (j.contains("schedule")) {
      const json& s = j["schedule"];
      HomotopySchedule& h = cfg.options.schedule;
      h.t0 = s.value("t0", h.t0);
      h.shrink = s.value("shrink", h.shrink);
      h.tol_comp = s.value("tol_comp", h.tol_comp);
      h.t_floor = s.value("t_floor", h.t_floor);
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  if (cfg.seeds.empty() || cfg.sizes.empty() || cfg.methods.empty() ||
      cfg.measures.empty() || cfg.betas.empty()) {
    throw UsageError("config: seeds, sizes, methods, measures and betas must be non-empty");
  }
  for (double b : cfg.betas) RiskSpec(RiskKind::CVaR, b);
  for (int n : cfg.sizes) {
    if (n < 2) throw UsageError("config: sizes must be at least 2");
    for (int k : cfg.kappas) {
      if (k < 1 || k >= n) throw UsageError("config: kappa must satisfy 1 <= kappa < n");
    }
  }
  cfg.options.schedule.validate();
  return cfg;
}

std::vector<GroupSummary> summarize(const std::vector<RunRecord>& records) {
  const auto best = best_feasible(records);
  std::map<std::tuple<std::string, RiskKind, double>, GroupSummary> groups;
  std::map<std::tuple<std::string, RiskKind, double>, int> gap_counts;
  for (const auto& r : records) {
    const auto key = std::make_tuple(r.method, r.measure, r.beta);
    GroupSummary& g = groups[key];
    g.method = r.method;
    g.measure = r.measure;
    g.beta = r.beta;
    ++g.runs;
    g.average_time_ms += r.time_ms;
    if (!r.feasible) {
      ++g.infeasible_count;
      continue;
    }
    if (r.objective <= best.at(key_of(r)) + kBestTieTol) ++g.best_count;
    if (r.gap) {
      g.average_gap = g.average_gap.value_or(0.0) + *r.gap;
      ++gap_counts[key];
    }
  }
  std::vector<GroupSummary> out;
  for (auto& [key, g] : groups) {
    g.average_time_ms /= g.runs;
    if (g.average_gap) *g.average_gap /= gap_counts[key];
    out.push_back(g);
  }
  return out;
}

std::string summary_to_csv(const std::vector<GroupSummary>& summary) {
  std::string out = "method,measure,beta,runs,average_gap,average_time_ms,best_count,infeasible_count\n";
  for (const auto& g : summary) {
    out += g.method + ',' + std::string(to_string(g.measure)) + ',' + format_double(g.beta) +
           ',' + std::to_string(g.runs) + ',' +
           (g.average_gap ? format_double(*g.average_gap) : std::string()) + ',' +
           format_double(g.average_time_ms) + ',' + std::to_string(g.best_count) + ',' +
           std::to_string(g.infeasible_count) + '\n';
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  ExperimentResult result;
  const std::vector<int> default_kappa{0};
  for (int n : config.sizes) {
    for (int kappa_req : config.kappas.empty() ? default_kappa : config.kappas) {
      for (std::uint64_t seed : config.seeds) {
        GeneratorParams params;
        params.n = n;
        params.seed = seed;
        params.kappa = kappa_req;
        const PortfolioInstance inst = generate_instance(params);
        const std::string id = "n" + std::to_string(n) + "-k" +
                               std::to_string(inst.kappa()) + "-s" + std::to_string(seed);
        for (RiskKind measure : config.measures) {
          for (double beta : config.betas) {
            const RiskSpec spec(measure, beta);
            for (const MethodTag& tag : config.methods) {
              if (tag.method == Method::Oracle && n > config.oracle_max_n) continue;
              result.records.push_back(
                  run_method(inst, id, tag, spec, config.options).record);
            }
          }
        }
      }
    }
  }
  std::sort(result.records.begin(), result.records.end(),
            [](const RunRecord& a, const RunRecord& b) {
              return std::tie(a.instance_id, a.method, a.measure, a.beta) <
                     std::tie(b.instance_id, b.method, b.measure, b.beta);
            });
  assign_gaps(result.records);
  result.summary = summarize(result.records);

  const auto best = best_feasible(result.records);
  std::vector<RunRecord> profiled;
  for (const auto& r : result.records) {
    if (best.count(key_of(r))) profiled.push_back(r);
  }
  if (!profiled.empty()) result.profile = performance_profile(profiled);
  return result;
}

void write_experiment(const ExperimentResult& result, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create '" + dir + "': " + ec.message());
  const std::filesystem::path base(dir);
  write_file((base / "records.csv").string(), records_to_csv(result.records));
  write_file((base / "summary.csv").string(), summary_to_csv(result.summary));
  write_file((base / "profile.csv").string(), profile_to_csv(result.profile));
}

}  // namespace ccrelax
