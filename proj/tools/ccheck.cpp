// ccheck: command-line front end for the consistency checking library.
//
// Subcommands:
//   check       verify a trace file against cc / cm / ccv
//   monitor     scan a trace online and stop at the first violation
//   simulate    run the simulated store and emit the resulting trace
//   fuzz        run many simulations and tabulate verdicts
//   encode-sat  translate a DIMACS CNF formula into an equivalent trace
//
// Exit codes: 0 = consistent / no violation, 1 = violation found,
// 2 = usage or input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ccheck/consistency.hpp"
#include "ccheck/history.hpp"
#include "ccheck/monitor.hpp"
#include "ccheck/oracle.hpp"
#include "ccheck/simstore.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

ccheck::Execution load_trace(const std::string& path) {
  if (path == "-") return ccheck::parse_trace(std::cin);
  return ccheck::parse_trace_file(path);
}

std::string witness_ids(const ccheck::BadPattern& p) {
  std::string out;
  for (const auto& [role, id] : p.witness) {
    (void)role;
    if (!out.empty()) out += ' ';
    out += ccheck::to_string(id);
  }
  return out;
}

int run_check(const std::string& path, const std::string& criterion, const std::string& mode,
              size_t oracle_cap) {
  ccheck::Execution exec = load_trace(path);
  ccheck::History h = ccheck::derive_history(exec);

  ccheck::CheckOptions opts;
  if (mode == "fast") opts.mode = ccheck::CheckMode::FastPath;
  else if (mode == "oracle") opts.mode = ccheck::CheckMode::Oracle;
  opts.oracle.op_cap = oracle_cap;

  std::vector<ccheck::Criterion> wanted;
  if (criterion == "all") {
    wanted = {ccheck::Criterion::CC, ccheck::Criterion::CM, ccheck::Criterion::CCv};
  } else if (criterion == "cc") {
    wanted = {ccheck::Criterion::CC};
  } else if (criterion == "cm") {
    wanted = {ccheck::Criterion::CM};
  } else {
    wanted = {ccheck::Criterion::CCv};
  }

  bool any_violation = false;
  std::map<ccheck::Criterion, ccheck::Verdict> verdicts;
  if (criterion == "all") {
    verdicts = ccheck::check_all(h, opts);
  } else {
    for (ccheck::Criterion c : wanted) {
      switch (c) {
        case ccheck::Criterion::CC: verdicts.emplace(c, ccheck::check_cc(h, opts)); break;
        case ccheck::Criterion::CM: verdicts.emplace(c, ccheck::check_cm(h, opts)); break;
        case ccheck::Criterion::CCv: verdicts.emplace(c, ccheck::check_ccv(h, opts)); break;
      }
    }
  }

  for (ccheck::Criterion c : wanted) {
    const ccheck::Verdict& v = verdicts.at(c);
    if (v.consistent) {
      std::cout << ccheck::to_string(c) << " ok\n";
      continue;
    }
    any_violation = true;
    std::cout << ccheck::to_string(c) << " violation";
    if (v.pattern) {
      if (!ccheck::validate_pattern(h, *v.pattern))
        throw std::runtime_error("internal error: reported witness failed re-validation");
      std::cout << ' ' << ccheck::to_string(v.pattern->kind) << ' ' << witness_ids(*v.pattern);
    }
    std::cout << '\n';
  }
  return any_violation ? 1 : 0;
}

int run_monitor(const std::string& path, size_t cap) {
  ccheck::Execution exec = load_trace(path);
  ccheck::MonitorOutcome out = ccheck::monitor_execution(exec, cap);
  if (out.violation) {
    std::cout << "VIOLATION " << ccheck::to_string(*out.branch) << " at "
              << ccheck::to_string(*out.at) << " after " << out.events_consumed
              << " events\n";
    return 1;
  }
  std::cout << "clean after " << out.events_consumed << " events\n";
  return 0;
}

int run_simulate(const ccheck::SimConfig& cfg, const std::string& emit) {
  ccheck::Execution exec = ccheck::run_sim(cfg);
  std::string text = ccheck::serialize_trace(exec);
  if (emit.empty() || emit == "-") {
    std::cout << text;
  } else {
    std::ofstream f(emit);
    if (!f) throw std::runtime_error("cannot write " + emit);
    f << text;
  }
  return 0;
}

int run_fuzz(const ccheck::SimConfig& cfg, uint32_t runs, const std::string& report_path) {
  ccheck::FuzzReport report = ccheck::fuzz(cfg, runs);
  std::ostringstream out;
  out << "seed cc cm ccv\n";
  for (const ccheck::FuzzRow& row : report.rows)
    out << row.seed << ' ' << row.cc << ' ' << row.cm << ' ' << row.ccv << '\n';
  out << "violations cc=" << report.cc_violations << " cm=" << report.cm_violations
      << " ccv=" << report.ccv_violations << '\n';
  if (report_path.empty() || report_path == "-") {
    std::cout << out.str();
  } else {
    std::ofstream f(report_path);
    if (!f) throw std::runtime_error("cannot write " + report_path);
    f << out.str();
  }
  bool any = report.cc_violations || report.cm_violations || report.ccv_violations;
  return any ? 1 : 0;
}

int run_encode(const std::string& path, const std::string& out_path) {
  ccheck::Cnf cnf;
  if (path == "-") {
    cnf = ccheck::parse_dimacs(std::cin);
  } else {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    cnf = ccheck::parse_dimacs(f);
  }
  ccheck::Execution exec = ccheck::to_execution_site_major(ccheck::encode_sat(cnf));
  std::string text = ccheck::serialize_trace(exec);
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write " + out_path);
    f << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"checker for causal consistency of replicated store traces"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand("check", "check a trace against a criterion");
  std::string check_file;
  std::string criterion = "all";
  std::string mode = "auto";
  size_t oracle_cap = 10;
  check->add_option("file", check_file, "trace file, or - for stdin")->required();
  check->add_option("--criterion", criterion, "cc, cm, ccv or all")
      ->check(CLI::IsMember({"cc", "cm", "ccv", "all"}));
  check->add_option("--mode", mode, "auto, fast or oracle")
      ->check(CLI::IsMember({"auto", "fast", "oracle"}));
  check->add_option("--oracle-cap", oracle_cap, "operation cap for the search-based mode");

  // monitor
  auto* monitor = app.add_subcommand("monitor", "scan a trace online, stop at first violation");
  std::string monitor_file;
  size_t frontier_cap = size_t{1} << 20;
  monitor->add_option("file", monitor_file, "trace file, or - for stdin")->required();
  monitor->add_option("--frontier-cap", frontier_cap, "configuration set size limit");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run the simulated store, emit a trace");
  ccheck::SimConfig sim;
  std::string protocol = "correct";
  std::string emit;
  simulate->add_option("--sites", sim.sites, "number of sites");
  simulate->add_option("--vars", sim.variables, "number of variables");
  simulate->add_option("--ops", sim.ops, "number of operations");
  simulate->add_option("--seed", sim.seed, "random seed");
  simulate->add_option("--write-percent", sim.write_percent, "share of writes, 0..100");
  simulate->add_option("--protocol", protocol,
                       "correct, no-causal-delivery, drop-read-deps, stale-read, reorder-local");
  simulate->add_option("--emit", emit, "output file, default stdout");

  // fuzz
  auto* fz = app.add_subcommand("fuzz", "run many simulations and check each history");
  uint32_t runs = 20;
  std::string report_path;
  fz->add_option("--runs", runs, "number of runs");
  fz->add_option("--sites", sim.sites, "number of sites");
  fz->add_option("--vars", sim.variables, "number of variables");
  fz->add_option("--ops", sim.ops, "number of operations");
  fz->add_option("--seed", sim.seed, "base seed, incremented per run");
  fz->add_option("--write-percent", sim.write_percent, "share of writes, 0..100");
  fz->add_option("--protocol", protocol,
                 "correct, no-causal-delivery, drop-read-deps, stale-read, reorder-local");
  fz->add_option("--report", report_path, "report file, default stdout");

  // encode-sat
  auto* enc = app.add_subcommand("encode-sat", "turn a DIMACS CNF into an equivalent trace");
  std::string dimacs_file;
  std::string out_path;
  enc->add_option("file", dimacs_file, "DIMACS file, or - for stdin")->required();
  enc->add_option("--out", out_path, "output trace file, default stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return run_check(check_file, criterion, mode, oracle_cap);
    if (monitor->parsed()) return run_monitor(monitor_file, frontier_cap);
    if (simulate->parsed() || fz->parsed()) {
      auto p = ccheck::parse_protocol(protocol);
      if (!p) {
        std::cerr << "error: unknown protocol '" << protocol << "'\n";
        return 2;
      }
      sim.protocol = *p;
      if (simulate->parsed()) return run_simulate(sim, emit);
      return run_fuzz(sim, runs, report_path);
    }
    if (enc->parsed()) return run_encode(dimacs_file, out_path);
  } catch (const ccheck::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
