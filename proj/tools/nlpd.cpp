// nlpd — workbench for online greedy assignment, speed scaling, and routing
// with machine-checked dual certificates.
//
// Exit codes: 0 = success / all certified, 1 = a certification check failed,
// 2 = execution error (bad input, solver failure, unwritable path).

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlpd/dual.hpp"
#include "nlpd/experiment.hpp"
#include "nlpd/generators.hpp"
#include "nlpd/integer_greedy.hpp"
#include "nlpd/json_io.hpp"
#include "nlpd/oracle.hpp"
#include "nlpd/rounding.hpp"
#include "nlpd/routing.hpp"
#include "nlpd/speed_scaling.hpp"
#include "nlpd/waterfill.hpp"

namespace {

using nlohmann::json;

struct GlobalOpts {
  std::optional<double> alpha;
  std::optional<double> delta;
  std::uint64_t seed = 1;
  double eps = 1e-3;
  std::string out;
  bool force = false;
};

void emit(const GlobalOpts& g, const std::string& content) {
  if (g.out.empty())
    std::cout << content;
  else
    nlpd::io::write_file(g.out, content, g.force);
}

void print_certificate(const nlpd::CertificateReport& cert) {
  std::cout << "on        = " << cert.on << "\n"
            << "dual      = " << cert.dual << "\n"
            << "ratio     = " << cert.ratio << "\n"
            << "bound     = " << cert.bound << "\n"
            << "certified = " << (cert.certified ? "yes" : "NO") << "\n"
            << "psi_check = " << (cert.psi_check ? "yes" : "NO") << "\n";
}

nlpd::Mode parse_mode(const std::string& s) {
  if (s == "frac" || s == "fractional") return nlpd::Mode::Fractional;
  if (s == "int" || s == "integer") return nlpd::Mode::Integer;
  throw std::invalid_argument("unknown mode \"" + s + "\" (expected frac or int)");
}

// ---------------------------------------------------------------- gen

void cmd_gen(const GlobalOpts& g, const std::string& kind, int jobs, int machines, int nodes,
             int requests, int horizon, double density, double extra_edges, bool zero_costs,
             bool agreeable) {
  double alpha = g.alpha.value_or(2.0);
  std::string payload;
  if (kind == "random-ongap") {
    nlpd::gen::RandomOngapParams p;
    p.jobs = jobs;
    p.machines = machines;
    p.alpha = alpha;
    p.density = density;
    p.zero_costs = zero_costs;
    payload = nlpd::io::write_instance(nlpd::gen::random_ongap(p, g.seed));
  } else if (kind == "split-gap") {
    payload = nlpd::io::write_instance(nlpd::gen::split_gap(machines, alpha));
  } else if (kind == "speed-scaling") {
    nlpd::gen::RandomSsParams p;
    p.jobs = jobs;
    p.horizon = horizon;
    p.alpha = alpha;
    p.agreeable = agreeable;
    payload = nlpd::io::write_ss_jobs(nlpd::gen::random_speed_scaling(p, g.seed));
  } else if (kind == "random-graph") {
    nlpd::gen::RandomGraphParams p;
    p.nodes = nodes;
    p.requests = requests;
    p.extra_edge_factor = extra_edges;
    p.alpha = alpha;
    payload = nlpd::io::write_graph(nlpd::gen::random_graph(p, g.seed));
  } else {
    throw std::invalid_argument("unknown --kind \"" + kind + "\"");
  }
  emit(g, payload);
}

// ---------------------------------------------------------------- run

int cmd_run(const GlobalOpts& g, const std::string& input, const std::string& mode_str,
            bool no_augment, const std::string& events_path) {
  nlpd::Instance inst = nlpd::io::parse_instance(nlpd::io::read_file(input));
  if (g.alpha) inst.alpha = *g.alpha;
  nlpd::require_valid(inst);
  nlpd::Mode mode = parse_mode(mode_str);
  nlpd::Parameters params{mode, g.delta};

  nlpd::CertificateReport cert;
  if (mode == nlpd::Mode::Fractional) {
    nlpd::FractionalRun run = nlpd::run_online_fractional(inst, params);
    cert = nlpd::certify_run(run, inst);
    if (!events_path.empty())
      nlpd::io::write_file(events_path, nlpd::io::write_events(run.log), g.force);
  } else {
    nlpd::Instance work = no_augment ? inst : nlpd::augmented_instance(inst);
    nlpd::IntegerRun run = nlpd::greedy_assign_integer(work, params);
    cert = nlpd::integer_dual_bound(run, work);
    std::cout << "original objective = " << nlpd::objective(run.state, inst) << "\n";
    if (!events_path.empty())
      throw std::invalid_argument("--events applies to fractional runs only");
  }
  print_certificate(cert);
  if (!g.out.empty()) nlpd::io::write_file(g.out, nlpd::io::write_certificate(cert), g.force);
  return cert.certified ? 0 : 1;
}

// ---------------------------------------------------------------- route

int cmd_route(const GlobalOpts& g, const std::string& input, bool certify,
              const std::string& rule_str) {
  nlpd::net::RoutingInstance inst = nlpd::io::parse_graph(nlpd::io::read_file(input));
  if (g.alpha) inst.alpha = *g.alpha;
  nlpd::ValidationReport rep = nlpd::net::validate_routing(inst);
  if (!rep.ok()) throw std::invalid_argument(rep.str());

  nlpd::net::LambdaRule rule = nlpd::net::LambdaRule::MarginalSum;
  if (rule_str == "power-of-sum")
    rule = nlpd::net::LambdaRule::PowerOfSum;
  else if (rule_str != "marginal-sum")
    throw std::invalid_argument("unknown --rule (expected marginal-sum or power-of-sum)");

  nlpd::net::RoutingRun run = nlpd::net::run_online_routing(inst, g.eps, rule, g.delta);
  std::cout << "on = " << run.on << "\n";
  if (!certify) {
    if (!g.out.empty()) {
      json j{{"on", run.on}, {"edge_load", run.edge_load}, {"lambda", run.lambda}};
      nlpd::io::write_file(g.out, j.dump(2) + "\n", g.force);
    }
    return 0;
  }
  nlpd::net::RoutingCertificate cert = nlpd::net::routing_dual_certificate(run, inst, g.eps);
  std::cout << "cert      = " << cert.cert << "\n"
            << "ratio     = " << cert.ratio << "\n"
            << "bound     = " << cert.bound << "\n"
            << "certified = " << (cert.certified ? "yes" : "NO") << "\n";
  if (!g.out.empty()) {
    json j{{"on", cert.on},       {"cert", cert.cert},           {"ratio", cert.ratio},
           {"bound", cert.bound}, {"certified", cert.certified}, {"edge_load", run.edge_load}};
    nlpd::io::write_file(g.out, j.dump(2) + "\n", g.force);
  }
  return cert.certified ? 0 : 1;
}

// ---------------------------------------------------------------- ss

int cmd_ss(const GlobalOpts& g, const std::string& jobs_path, const std::string& kernel_str,
           bool compare_oa) {
  nlpd::ss::SsInstance ssi = nlpd::io::parse_ss_jobs(nlpd::io::read_file(jobs_path));
  if (g.alpha) ssi.alpha = *g.alpha;
  if (kernel_str == "deadline")
    ssi.kernel = nlpd::ss::Kernel::Deadline;
  else if (kernel_str == "flow")
    ssi.kernel = nlpd::ss::Kernel::Flow;
  else if (kernel_str == "flow2") {
    ssi.kernel = nlpd::ss::Kernel::FlowPower;
    ssi.power = 2.0;
  } else {
    throw std::invalid_argument("unknown --kernel (expected deadline, flow, or flow2)");
  }

  nlpd::Parameters params{nlpd::Mode::Fractional, g.delta};
  nlpd::ss::GreedyScheduleResult res = nlpd::ss::greedy_schedule(ssi, params);
  nlpd::CertificateReport cert = nlpd::certify_run(res.run, res.instance);
  print_certificate(cert);
  if (!g.out.empty())
    nlpd::io::write_file(g.out, nlpd::io::write_trace(res.trace), g.force);

  int rc = cert.certified ? 0 : 1;
  if (compare_oa) {
    if (ssi.kernel != nlpd::ss::Kernel::Deadline)
      throw std::invalid_argument("--compare-oa requires the deadline kernel");
    nlpd::ss::ScheduleTrace oa = nlpd::ss::oa_speed_profile(ssi);
    double gap = nlpd::ss::compare_profiles(res.trace, oa);
    std::cout << "oa_gap    = " << gap << "\n";
    if (gap > 1e-6) rc = 1;
  }
  return rc;
}

// ---------------------------------------------------------------- round

int cmd_round(const GlobalOpts& g, const std::string& input, std::size_t samples,
              const std::string& report_path) {
  nlpd::Instance inst = nlpd::io::parse_instance(nlpd::io::read_file(input));
  if (g.alpha) inst.alpha = *g.alpha;
  nlpd::require_valid(inst);
  nlpd::FractionalRun run = nlpd::run_online_fractional(inst, nlpd::Parameters{});
  nlpd::MonteCarloStats st = nlpd::monte_carlo_cost(run.state, inst, samples, g.seed);

  std::cout << "samples   = " << st.samples << "\n"
            << "mean      = " << st.mean << "\n"
            << "stderr    = " << st.std_error << "\n"
            << "ratio     = " << st.ratio << "\n"
            << "threshold = " << st.threshold << "\n";
  if (st.flagged)
    std::cout << "warning: Monte-Carlo ratio exceeds the moment-bound threshold\n";

  if (!report_path.empty()) {
    json j{{"samples", st.samples}, {"seed", g.seed},           {"mean", st.mean},
           {"stderr", st.std_error}, {"ratio", st.ratio},        {"threshold", st.threshold},
           {"flagged", st.flagged}};
    nlpd::io::write_file(report_path, j.dump(2) + "\n", g.force);
  }
  return 0;  // the threshold is a monitor, not a guarantee
}

// ---------------------------------------------------------------- oracle

int cmd_oracle(const GlobalOpts& g, const std::string& input, const std::string& mode,
               double tol) {
  json j;
  if (mode == "frac") {
    nlpd::Instance inst = nlpd::io::parse_instance(nlpd::io::read_file(input));
    if (g.alpha) inst.alpha = *g.alpha;
    nlpd::require_valid(inst);
    nlpd::oracle::FractionalOpt opt = nlpd::oracle::fractional_opt(inst, tol);
    std::cout << "objective = " << opt.objective << " (block descent, " << opt.cycles
              << " cycles)\n";
    j = json{{"objective", opt.objective}, {"cycles", opt.cycles}};
  } else if (mode == "int") {
    nlpd::Instance inst = nlpd::io::parse_instance(nlpd::io::read_file(input));
    if (g.alpha) inst.alpha = *g.alpha;
    nlpd::require_valid(inst);
    nlpd::oracle::BruteForceOpt opt = nlpd::oracle::integer_opt_bruteforce(inst);
    std::cout << "objective = " << opt.objective << " (exhaustive)\n";
    j = json{{"objective", opt.objective}, {"choice", opt.choice}};
  } else if (mode == "frac-routing") {
    nlpd::net::RoutingInstance inst = nlpd::io::parse_graph(nlpd::io::read_file(input));
    if (g.alpha) inst.alpha = *g.alpha;
    nlpd::oracle::RoutingOpt opt = nlpd::oracle::fractional_opt_routing(inst, tol);
    std::cout << "objective = " << opt.objective << " (Frank-Wolfe, gap " << opt.fw_gap
              << ", " << opt.iterations << " iterations)\n";
    j = json{{"objective", opt.objective}, {"gap", opt.fw_gap}, {"iterations", opt.iterations}};
  } else {
    throw std::invalid_argument("unknown --mode (expected frac, int, or frac-routing)");
  }
  if (!g.out.empty()) nlpd::io::write_file(g.out, j.dump(2) + "\n", g.force);
  return 0;
}

// ---------------------------------------------------------------- check-lemma

int cmd_check_lemma(const GlobalOpts& g, const std::vector<double>& seq) {
  double alpha = g.alpha.value_or(2.0);
  nlpd::InequalityCheck chk = nlpd::check_key_inequality(seq, alpha, g.delta);
  std::cout << "lhs   = " << chk.lhs << "\n"
            << "rhs   = " << chk.rhs << "\n"
            << "holds = " << (chk.holds ? "yes" : "NO") << "\n";
  return chk.holds ? 0 : 1;
}

// ---------------------------------------------------------------- report

int cmd_report(const GlobalOpts& g, const std::string& config_path, const std::string& format) {
  nlpd::exp::ExperimentConfig cfg = nlpd::exp::parse_config(nlpd::io::read_file(config_path));
  if (g.alpha) cfg.alpha_override = g.alpha;
  if (g.delta) cfg.delta = g.delta;
  nlpd::exp::ExperimentReport rep = nlpd::exp::run_experiment(cfg);

  std::string payload;
  if (format == "json")
    payload = nlpd::exp::report_to_json(rep);
  else if (format == "csv")
    payload = nlpd::exp::report_to_csv(rep);
  else
    throw std::invalid_argument("unknown --format (expected json or csv)");
  emit(g, payload);

  for (const nlpd::exp::AlphaAggregate& a : rep.aggregates)
    std::cerr << "alpha " << a.alpha << ": " << a.count << " runs, ratio min/median/max = "
              << a.min_ratio << " / " << a.median_ratio << " / " << a.max_ratio << "\n";
  return nlpd::exp::report_exit_code(rep);
}

}  // namespace

int main(int argc, char** argv) {
  std::cout.precision(12);
  std::cerr.precision(12);

  CLI::App app{"online nonlinear load balancing workbench"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--alpha", g.alpha, "load exponent override (default: from input, or 2)");
  app.add_option("--delta", g.delta, "marginal discount override in (0, 1]");
  app.add_option("--seed", g.seed, "RNG seed (default 1)");
  app.add_option("--eps", g.eps, "routing chunk fraction (default 1e-3)");
  app.add_option("--out", g.out, "output path (default: stdout)");
  app.add_flag("--force", g.force, "overwrite existing output files");

  int rc = 0;

  // gen
  std::string gen_kind;
  int gen_jobs = 10, gen_machines = 4, gen_nodes = 10, gen_requests = 4, gen_horizon = 16;
  double gen_density = 0.7, gen_extra_edges = 1.0;
  bool gen_zero_costs = false, gen_agreeable = false;
  CLI::App* gen = app.add_subcommand("gen", "generate a deterministic random instance");
  gen->fallthrough();
  gen->add_option("--kind", gen_kind,
                  "random-ongap | split-gap | speed-scaling | random-graph")->required();
  gen->add_option("--jobs", gen_jobs, "job count (random-ongap, speed-scaling)");
  gen->add_option("--machines", gen_machines, "machine count (random-ongap, split-gap)");
  gen->add_option("--nodes", gen_nodes, "node count (random-graph)");
  gen->add_option("--requests", gen_requests, "request count (random-graph)");
  gen->add_option("--horizon", gen_horizon, "slot count (speed-scaling)");
  gen->add_option("--density", gen_density, "option density (random-ongap)");
  gen->add_option("--extra-edges", gen_extra_edges,
                  "extra edges per node beyond the spanning tree (random-graph)");
  gen->add_flag("--zero-costs", gen_zero_costs, "pure load balancing (random-ongap)");
  gen->add_flag("--agreeable", gen_agreeable,
                "arrival order matches deadline order (speed-scaling)");
  gen->callback([&] {
    cmd_gen(g, gen_kind, gen_jobs, gen_machines, gen_nodes, gen_requests, gen_horizon,
            gen_density, gen_extra_edges, gen_zero_costs, gen_agreeable);
  });

  // run
  std::string run_input, run_mode = "frac", run_events;
  bool run_no_augment = false;
  CLI::App* run = app.add_subcommand("run", "online greedy assignment + dual certificate");
  run->fallthrough();
  run->add_option("--input", run_input, "instance JSON")->required();
  run->add_option("--mode", run_mode, "frac | int (default frac)");
  run->add_flag("--no-augment", run_no_augment,
                "integer mode: skip the load^alpha cost augmentation");
  run->add_option("--events", run_events, "write the per-job water-filling log here");
  run->callback([&] { rc = cmd_run(g, run_input, run_mode, run_no_augment, run_events); });

  // route
  std::string route_input, route_rule = "marginal-sum";
  bool route_certify = false;
  CLI::App* route = app.add_subcommand("route", "online chunked greedy routing");
  route->fallthrough();
  route->add_option("--input", route_input, "graph JSON")->required();
  route->add_flag("--certify", route_certify, "evaluate the dual-style certificate");
  route->add_option("--rule", route_rule, "marginal-sum | power-of-sum (threshold rule)");
  route->callback([&] { rc = cmd_route(g, route_input, route_certify, route_rule); });

  // ss
  std::string ss_jobs, ss_kernel = "deadline";
  bool ss_compare_oa = false;
  CLI::App* ss = app.add_subcommand("ss", "speed scaling via the assignment reduction");
  ss->fallthrough();
  ss->add_option("--jobs", ss_jobs, "jobs JSON")->required();
  ss->add_option("--kernel", ss_kernel, "deadline | flow | flow2 (default deadline)");
  ss->add_flag("--compare-oa", ss_compare_oa,
               "compare speeds against the replanning reference (deadline kernel)");
  ss->callback([&] { rc = cmd_ss(g, ss_jobs, ss_kernel, ss_compare_oa); });

  // round
  std::string round_input, round_report;
  std::size_t round_samples = 10000;
  CLI::App* round = app.add_subcommand("round", "randomized rounding of the fractional run");
  round->fallthrough();
  round->add_option("--input", round_input, "instance JSON (unit demands)")->required();
  round->add_option("--samples", round_samples, "Monte-Carlo sample count (default 10000)");
  round->add_option("--report", round_report, "write the statistics JSON here");
  round->callback([&] { rc = cmd_round(g, round_input, round_samples, round_report); });

  // oracle
  std::string oracle_input, oracle_mode;
  double oracle_tol = 1e-8;
  CLI::App* oracle = app.add_subcommand("oracle", "offline optimum solvers");
  oracle->fallthrough();
  oracle->add_option("--input", oracle_input, "instance or graph JSON")->required();
  oracle->add_option("--mode", oracle_mode, "frac | int | frac-routing")->required();
  oracle->add_option("--tol", oracle_tol, "convergence tolerance (default 1e-8)");
  oracle->callback([&] { rc = cmd_oracle(g, oracle_input, oracle_mode, oracle_tol); });

  // check-lemma
  std::vector<double> lemma_seq;
  CLI::App* lemma = app.add_subcommand(
      "check-lemma", "scalar inequality behind the integral greedy bound");
  lemma->fallthrough();
  lemma->add_option("--seq", lemma_seq, "comma-separated nonnegative terms")
      ->required()
      ->delimiter(',');
  lemma->callback([&] { rc = cmd_check_lemma(g, lemma_seq); });

  // report
  std::string report_config, report_format = "json";
  CLI::App* report = app.add_subcommand("report", "run a batch experiment config");
  report->fallthrough();
  report->add_option("--config", report_config, "experiment config JSON")->required();
  report->add_option("--format", report_format, "json | csv (default json)");
  report->callback([&] { rc = cmd_report(g, report_config, report_format); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
