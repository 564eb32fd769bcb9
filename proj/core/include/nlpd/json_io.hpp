#pragma once

#include <string>

#include "nlpd/dual.hpp"
#include "nlpd/routing.hpp"
#include "nlpd/speed_scaling.hpp"

// File formats. All parsers reject unknown fields and wrong types with
// std::invalid_argument; all writers emit deterministic output (sorted keys,
// shortest round-trip numbers), so identical data gives identical bytes.
namespace nlpd::io {

// {"alpha": r, "machines": n, "jobs": [{"demand": r,
//   "options": [{"m": n, "load": r, "cost": r}, ...]}, ...]}
Instance parse_instance(const std::string& text);
std::string write_instance(const Instance& inst);

// {"alpha": r, "nodes": n, "edges": [[u, v], ...],
//  "requests": [{"s": u, "t": v, "f": r}, ...]}
net::RoutingInstance parse_graph(const std::string& text);
std::string write_graph(const net::RoutingInstance& inst);

// {"horizon": n, "speed": [r, ...], "work": [[r, ...], ...]}
ss::ScheduleTrace parse_trace(const std::string& text);
std::string write_trace(const ss::ScheduleTrace& trace);

// {"alpha": r, "horizon": n, "beta": r, "jobs": [{"r": n, "d": n, "p": r}, ...]}
// ("d" may be omitted for kernels that ignore deadlines)
ss::SsInstance parse_ss_jobs(const std::string& text);
std::string write_ss_jobs(const ss::SsInstance& ssi);

// {"on": r, "dual": r, "ratio": r, "bound": r, "certified": b, "psi_check": b}
std::string write_certificate(const CertificateReport& rep);

// [{"job": n, "theta": r, "support": [n, ...], "allocation": [r, ...]}, ...]
std::string write_events(const std::vector<WaterfillEvent>& events);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content, bool overwrite);

}  // namespace nlpd::io
