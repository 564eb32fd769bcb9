#include "nlpd/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <thread>

#include <json.hpp>

#include "nlpd/dual.hpp"
#include "nlpd/integer_greedy.hpp"
#include "nlpd/json_io.hpp"
#include "nlpd/oracle.hpp"
#include "nlpd/waterfill.hpp"

namespace nlpd::exp {

using nlohmann::json;

ExperimentConfig parse_config(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("config: malformed JSON");
  if (!j.is_object()) throw std::invalid_argument("config: expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k != "instances" && k != "mode" && k != "alpha" && k != "delta" && k != "oracle")
      throw std::invalid_argument("config: unknown field \"" + k + "\"");
  }
  if (!j.contains("instances") || !j["instances"].is_array())
    throw std::invalid_argument("config: \"instances\" must be an array of paths");
  if (!j.contains("mode") || !j["mode"].is_string())
    throw std::invalid_argument("config: \"mode\" must be \"fractional\" or \"integer\"");

  ExperimentConfig cfg;
  for (const json& p : j["instances"]) {
    if (!p.is_string()) throw std::invalid_argument("config: instance paths must be strings");
    cfg.instances.push_back(p.get<std::string>());
  }
  std::string mode = j["mode"].get<std::string>();
  if (mode == "fractional")
    cfg.mode = Mode::Fractional;
  else if (mode == "integer")
    cfg.mode = Mode::Integer;
  else
    throw std::invalid_argument("config: mode must be \"fractional\" or \"integer\"");
  if (j.contains("alpha")) {
    if (!j["alpha"].is_number()) throw std::invalid_argument("config: alpha must be a number");
    cfg.alpha_override = j["alpha"].get<double>();
  }
  if (j.contains("delta")) {
    if (!j["delta"].is_number()) throw std::invalid_argument("config: delta must be a number");
    cfg.delta = j["delta"].get<double>();
  }
  if (j.contains("oracle")) {
    if (!j["oracle"].is_boolean())
      throw std::invalid_argument("config: oracle must be a boolean");
    cfg.oracle = j["oracle"].get<bool>();
  }
  return cfg;
}

unsigned thread_budget() {
  if (const char* env = std::getenv("NLPD_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

namespace {

ExperimentRow run_one(const ExperimentConfig& cfg, const std::string& path) {
  ExperimentRow row;
  row.instance = path;
  auto start = std::chrono::steady_clock::now();
  try {
    Instance inst = io::parse_instance(io::read_file(path));
    if (cfg.alpha_override) inst.alpha = *cfg.alpha_override;
    require_valid(inst);
    row.alpha = inst.alpha;

    Parameters params{cfg.mode, cfg.delta};
    CertificateReport cert;
    if (cfg.mode == Mode::Fractional) {
      FractionalRun run = run_online_fractional(inst, params);
      cert = certify_run(run, inst);
      if (cfg.oracle) {
        row.opt = oracle::fractional_opt(inst).objective;
        row.opt_ratio = cert.on / row.opt;
      }
    } else {
      Instance aug = augmented_instance(inst);
      IntegerRun run = greedy_assign_integer(aug, params);
      cert = integer_dual_bound(run, aug);
      if (cfg.oracle) {
        row.opt = oracle::integer_opt_bruteforce(aug).objective;
        row.opt_ratio = cert.on / row.opt;
      }
    }
    row.on = cert.on;
    row.dual = cert.dual;
    row.ratio = cert.ratio;
    row.bound = cert.bound;
    row.certified = cert.certified;
    row.psi_check = cert.psi_check;
  } catch (const std::exception& e) {
    row.error = e.what();
    row.certified = false;
  }
  auto stop = std::chrono::steady_clock::now();
  row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return row;
}

std::vector<AlphaAggregate> aggregate_rows(const std::vector<ExperimentRow>& rows) {
  std::map<double, std::vector<double>> ratios;
  for (const ExperimentRow& r : rows)
    if (r.error.empty() && std::isfinite(r.ratio)) ratios[r.alpha].push_back(r.ratio);
  std::vector<AlphaAggregate> out;
  for (auto& [alpha, v] : ratios) {
    std::sort(v.begin(), v.end());
    AlphaAggregate a;
    a.alpha = alpha;
    a.count = static_cast<int>(v.size());
    a.min_ratio = v.front();
    a.max_ratio = v.back();
    size_t n = v.size();
    a.median_ratio = (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    out.push_back(a);
  }
  return out;
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  ExperimentReport report;
  report.config = config;
  report.rows.resize(config.instances.size());

  unsigned workers = std::min<unsigned>(
      thread_budget(), std::max<size_t>(config.instances.size(), 1));
  std::atomic<size_t> next{0};
  auto drain = [&] {
    for (size_t i = next.fetch_add(1); i < config.instances.size(); i = next.fetch_add(1))
      report.rows[i] = run_one(config, config.instances[i]);
  };
  if (workers <= 1) {
    drain();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(drain);
    for (std::thread& t : pool) t.join();
  }

  report.aggregates = aggregate_rows(report.rows);
  return report;
}

std::string report_to_json(const ExperimentReport& report) {
  json rows = json::array();
  for (const ExperimentRow& r : report.rows) {
    json row{{"instance", r.instance}, {"alpha", r.alpha},         {"on", r.on},
             {"dual", r.dual},         {"ratio", r.ratio},         {"bound", r.bound},
             {"certified", r.certified}, {"psi_check", r.psi_check}, {"wall_ms", r.wall_ms},
             {"error", r.error}};
    if (std::isfinite(r.opt)) {
      row["opt"] = r.opt;
      row["opt_ratio"] = r.opt_ratio;
    }
    // NaN is not representable in JSON; emit null for unset numeric fields.
    for (auto& [k, v] : row.items())
      if (v.is_number() && !std::isfinite(v.get<double>())) row[k] = nullptr;
    rows.push_back(std::move(row));
  }
  json aggs = json::array();
  for (const AlphaAggregate& a : report.aggregates)
    aggs.push_back({{"alpha", a.alpha},
                    {"count", a.count},
                    {"min_ratio", a.min_ratio},
                    {"median_ratio", a.median_ratio},
                    {"max_ratio", a.max_ratio}});
  json j{{"schema", 1},
         {"mode", report.config.mode == Mode::Integer ? "integer" : "fractional"},
         {"rows", std::move(rows)},
         {"aggregates", std::move(aggs)}};
  return j.dump(2) + "\n";
}

namespace {

// One logical row per instance: newlines collapse to "; ", and fields holding
// a comma or quote get RFC-4180 quoting.
std::string csv_field(std::string s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] == '\n') s.replace(i, 1, "; ");
  if (s.find(',') != std::string::npos || s.find('"') != std::string::npos) {
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    quoted += '"';
    return quoted;
  }
  return s;
}

}  // namespace

std::string report_to_csv(const ExperimentReport& report) {
  std::string out =
      "instance,alpha,on,dual,ratio,bound,certified,psi_check,opt,opt_ratio,wall_ms,error\n";
  char buf[512];
  for (const ExperimentRow& r : report.rows) {
    std::string opt = std::isfinite(r.opt) ? fmt12(r.opt) : "";
    std::string opt_ratio = std::isfinite(r.opt_ratio) ? fmt12(r.opt_ratio) : "";
    std::snprintf(buf, sizeof buf, "%s,%.12g,%.17g,%.17g,%s,%.12g,%d,%d,%s,%s,%.3f,%s\n",
                  csv_field(r.instance).c_str(), r.alpha, r.on, r.dual, fmt12(r.ratio).c_str(),
                  r.bound, r.certified ? 1 : 0, r.psi_check ? 1 : 0, opt.c_str(),
                  opt_ratio.c_str(), r.wall_ms, csv_field(r.error).c_str());
    out += buf;
  }
  return out;
}

int report_exit_code(const ExperimentReport& report) {
  for (const ExperimentRow& r : report.rows)
    if (!r.error.empty()) return 2;
  for (const ExperimentRow& r : report.rows)
    if (!r.certified) return 1;
  return 0;
}

}  // namespace nlpd::exp
