#include "nlpd/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nlpd::io {

using nlohmann::json;

namespace {

json parse_text(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw std::invalid_argument(std::string(what) + ": malformed JSON");
  return j;
}

void expect_fields(const json& obj, const char* what,
                   std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {}) {
  if (!obj.is_object()) throw std::invalid_argument(std::string(what) + ": expected an object");
  for (const char* f : required)
    if (!obj.contains(f))
      throw std::invalid_argument(std::string(what) + ": missing field \"" + f + "\"");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    auto known = [&](std::initializer_list<const char*> lst) {
      for (const char* f : lst)
        if (it.key() == f) return true;
      return false;
    };
    if (!known(required) && !known(optional))
      throw std::invalid_argument(std::string(what) + ": unknown field \"" + it.key() + "\"");
  }
}

double as_real(const json& v, const char* what) {
  if (!v.is_number()) throw std::invalid_argument(std::string(what) + ": expected a number");
  return v.get<double>();
}

int as_int(const json& v, const char* what) {
  if (!v.is_number_integer())
    throw std::invalid_argument(std::string(what) + ": expected an integer");
  return v.get<int>();
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json j = parse_text(text, "instance");
  expect_fields(j, "instance", {"alpha", "machines", "jobs"});
  Instance inst;
  inst.alpha = as_real(j["alpha"], "instance.alpha");
  inst.machines = as_int(j["machines"], "instance.machines");
  if (!j["jobs"].is_array()) throw std::invalid_argument("instance.jobs: expected an array");
  for (const json& jj : j["jobs"]) {
    expect_fields(jj, "job", {"demand", "options"});
    JobSpec job;
    job.demand = as_real(jj["demand"], "job.demand");
    if (!jj["options"].is_array())
      throw std::invalid_argument("job.options: expected an array");
    for (const json& jo : jj["options"]) {
      expect_fields(jo, "option", {"m", "load", "cost"});
      job.options.push_back({as_int(jo["m"], "option.m"), as_real(jo["load"], "option.load"),
                             as_real(jo["cost"], "option.cost")});
    }
    inst.jobs.push_back(std::move(job));
  }
  return inst;
}

std::string write_instance(const Instance& inst) {
  json jobs = json::array();
  for (const JobSpec& job : inst.jobs) {
    json opts = json::array();
    for (const MachineOption& o : job.options)
      opts.push_back({{"m", o.machine}, {"load", o.load}, {"cost", o.cost}});
    jobs.push_back({{"demand", job.demand}, {"options", std::move(opts)}});
  }
  json j{{"alpha", inst.alpha}, {"machines", inst.machines}, {"jobs", std::move(jobs)}};
  return j.dump(2) + "\n";
}

net::RoutingInstance parse_graph(const std::string& text) {
  json j = parse_text(text, "graph");
  expect_fields(j, "graph", {"alpha", "nodes", "edges", "requests"});
  net::RoutingInstance inst;
  inst.alpha = as_real(j["alpha"], "graph.alpha");
  inst.nodes = as_int(j["nodes"], "graph.nodes");
  if (!j["edges"].is_array()) throw std::invalid_argument("graph.edges: expected an array");
  for (const json& je : j["edges"]) {
    if (!je.is_array() || je.size() != 2)
      throw std::invalid_argument("graph.edges: each edge must be [u, v]");
    inst.edges.push_back({as_int(je[0], "edge.u"), as_int(je[1], "edge.v")});
  }
  if (!j["requests"].is_array())
    throw std::invalid_argument("graph.requests: expected an array");
  for (const json& jr : j["requests"]) {
    expect_fields(jr, "request", {"s", "t", "f"});
    inst.requests.push_back({as_int(jr["s"], "request.s"), as_int(jr["t"], "request.t"),
                             as_real(jr["f"], "request.f")});
  }
  return inst;
}

std::string write_graph(const net::RoutingInstance& inst) {
  json edges = json::array();
  for (const net::Edge& e : inst.edges) edges.push_back({e.u, e.v});
  json reqs = json::array();
  for (const net::Request& r : inst.requests)
    reqs.push_back({{"s", r.s}, {"t", r.t}, {"f", r.flow}});
  json j{{"alpha", inst.alpha},
         {"nodes", inst.nodes},
         {"edges", std::move(edges)},
         {"requests", std::move(reqs)}};
  return j.dump(2) + "\n";
}

ss::ScheduleTrace parse_trace(const std::string& text) {
  json j = parse_text(text, "trace");
  expect_fields(j, "trace", {"horizon", "speed", "work"});
  ss::ScheduleTrace tr;
  tr.horizon = as_int(j["horizon"], "trace.horizon");
  if (!j["speed"].is_array() || !j["work"].is_array())
    throw std::invalid_argument("trace: speed and work must be arrays");
  for (const json& v : j["speed"]) tr.speed.push_back(as_real(v, "trace.speed"));
  for (const json& row : j["work"]) {
    if (!row.is_array()) throw std::invalid_argument("trace.work: expected rows");
    std::vector<double> r;
    for (const json& v : row) r.push_back(as_real(v, "trace.work"));
    tr.work.push_back(std::move(r));
  }
  if (static_cast<int>(tr.speed.size()) != tr.horizon)
    throw std::invalid_argument("trace: speed length must equal horizon");
  for (const auto& r : tr.work)
    if (static_cast<int>(r.size()) != tr.horizon)
      throw std::invalid_argument("trace: work rows must equal horizon");
  return tr;
}

std::string write_trace(const ss::ScheduleTrace& trace) {
  json j{{"horizon", trace.horizon}, {"speed", trace.speed}, {"work", trace.work}};
  return j.dump(2) + "\n";
}

ss::SsInstance parse_ss_jobs(const std::string& text) {
  json j = parse_text(text, "jobs file");
  expect_fields(j, "jobs file", {"alpha", "horizon", "jobs"}, {"beta"});
  ss::SsInstance ssi;
  ssi.alpha = as_real(j["alpha"], "jobs.alpha");
  ssi.horizon = as_int(j["horizon"], "jobs.horizon");
  ssi.beta = j.contains("beta") ? as_real(j["beta"], "jobs.beta") : 1.0;
  if (!j["jobs"].is_array()) throw std::invalid_argument("jobs.jobs: expected an array");
  for (const json& jj : j["jobs"]) {
    expect_fields(jj, "job", {"r", "p"}, {"d"});
    ss::SsJob job;
    job.release = as_int(jj["r"], "job.r");
    job.deadline = jj.contains("d") ? as_int(jj["d"], "job.d") : 0;
    job.work = as_real(jj["p"], "job.p");
    ssi.jobs.push_back(job);
  }
  return ssi;
}

std::string write_ss_jobs(const ss::SsInstance& ssi) {
  json jobs = json::array();
  for (const ss::SsJob& job : ssi.jobs)
    jobs.push_back({{"r", job.release}, {"d", job.deadline}, {"p", job.work}});
  json j{{"alpha", ssi.alpha},
         {"horizon", ssi.horizon},
         {"beta", ssi.beta},
         {"jobs", std::move(jobs)}};
  return j.dump(2) + "\n";
}

std::string write_certificate(const CertificateReport& rep) {
  json j{{"on", rep.on},     {"dual", rep.dual},           {"ratio", rep.ratio},
         {"bound", rep.bound}, {"certified", rep.certified}, {"psi_check", rep.psi_check}};
  return j.dump(2) + "\n";
}

std::string write_events(const std::vector<WaterfillEvent>& events) {
  json arr = json::array();
  for (const WaterfillEvent& ev : events)
    arr.push_back({{"job", ev.job},
                   {"theta", ev.theta},
                   {"support", ev.support},
                   {"allocation", ev.allocation}});
  return arr.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content, bool overwrite) {
  if (!overwrite) {
    std::ifstream probe(path);
    if (probe.good())
      throw std::invalid_argument(path + " exists; pass --force to overwrite");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << content;
}

}  // namespace nlpd::io
