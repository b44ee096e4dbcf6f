// Acceptance harness: one self-contained scenario per criterion, each
// printing a single "CRITERION <n> PASS/FAIL <detail>" line.  Run a single
// criterion with --criterion <n> or everything with --all.

#include <unistd.h>

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ccheck/consistency.hpp"
#include "ccheck/history.hpp"
#include "ccheck/monitor.hpp"
#include "ccheck/oracle.hpp"
#include "ccheck/rng.hpp"
#include "ccheck/simstore.hpp"
#include "testutil.hpp"

using namespace ccheck;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Line {
  bool ok = true;
  std::ostringstream detail;

  template <class T>
  Line& operator<<(const T& v) {
    detail << v;
    return *this;
  }
  void fail() { ok = false; }
};

std::string read_file(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) return "<unreadable " + path + ">";
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
  std::fclose(f);
  return out;
}

// --- criterion 1: reference trace classification ---------------------------

bool consistent_triple(const std::map<Criterion, Verdict>& v, bool cc, bool cm, bool ccv) {
  return v.at(Criterion::CC).consistent == cc && v.at(Criterion::CM).consistent == cm &&
         v.at(Criterion::CCv).consistent == ccv;
}

PatternKind kind_of(const std::map<Criterion, Verdict>& v, Criterion c) {
  return v.at(c).pattern ? v.at(c).pattern->kind : PatternKind::CyclicCO;
}

Line criterion1() {
  Line line;
  const auto start = Clock::now();

  struct Want {
    const char* file;
    bool cc, cm, ccv;
  };
  const Want wants[] = {
      {"diverging_finals.trace", true, true, false},  {"split_session.trace", true, false, true},
      {"flipflop_read.trace", true, false, false}, {"consistent_swap.trace", true, true, true},
      {"overwritten_read.trace", false, false, false},
  };

  std::map<std::string, std::map<Criterion, Verdict>> all;
  for (const Want& w : wants) {
    History h = derive_history(parse_trace_file(testutil::trace_dir() + "/" + w.file));
    auto v = check_all(h);
    all.emplace(w.file, v);
    if (!consistent_triple(v, w.cc, w.cm, w.ccv)) {
      line.fail();
      line << w.file << " verdicts wrong; ";
    }
  }
  if (kind_of(all["diverging_finals.trace"], Criterion::CCv) != PatternKind::CyclicCF) {
    line.fail();
    line << "diverging_finals ccv witness kind wrong; ";
  }
  if (kind_of(all["split_session.trace"], Criterion::CM) != PatternKind::WriteHBInitRead) {
    line.fail();
    line << "split_session cm witness kind wrong; ";
  }
  const PatternKind c_cm = kind_of(all["flipflop_read.trace"], Criterion::CM);
  if (c_cm != PatternKind::WriteHBInitRead && c_cm != PatternKind::CyclicHB) {
    line.fail();
    line << "flipflop_read cm witness kind wrong; ";
  }
  if (kind_of(all["flipflop_read.trace"], Criterion::CCv) != PatternKind::CyclicCF) {
    line.fail();
    line << "flipflop_read ccv witness kind wrong; ";
  }
  if (kind_of(all["overwritten_read.trace"], Criterion::CC) != PatternKind::WriteCORead) {
    line.fail();
    line << "overwritten_read cc witness kind wrong; ";
  }

  const double secs = seconds_since(start);
  if (secs >= 1.0) {
    line.fail();
    line << "took " << secs << " s (budget 1 s); ";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "five reference traces classified (%.3f s)", secs);
  if (line.ok) line << buf;
  return line;
}

// --- criteria 2 and 3: fast path vs definition-level search ----------------

struct CorpusStats {
  uint64_t histories = 0;
  uint64_t disagreements = 0;
  uint64_t implication_breaks = 0;
  uint64_t violations_seen = 0;
};

void compare_on(const History& h, CorpusStats& st, bool with_oracle) {
  ++st.histories;
  CheckOptions fast;
  fast.mode = CheckMode::FastPath;
  const Verdict fcc = check_cc(h, fast);
  const Verdict fcm = check_cm(h, fast);
  const Verdict fccv = check_ccv(h, fast);
  if (!fcc.consistent) ++st.violations_seen;
  if (!fcc.consistent && (fcm.consistent || fccv.consistent)) ++st.implication_breaks;
  if (!with_oracle) return;

  CheckOptions oracle;
  oracle.mode = CheckMode::Oracle;
  const Verdict occ = check_cc(h, oracle);
  const Verdict ocm = check_cm(h, oracle);
  const Verdict occv = check_ccv(h, oracle);
  if (occ.consistent != fcc.consistent || ocm.consistent != fcm.consistent ||
      occv.consistent != fccv.consistent)
    ++st.disagreements;
  if (!occ.consistent && (ocm.consistent || occv.consistent)) ++st.implication_breaks;
}

void random_corpus(const std::function<void(const History&)>& fn) {
  SplitMix64 rng(20260819);
  for (int i = 0; i < 500; ++i) fn(testutil::random_history(rng, 8, 3, 2));
  for (int i = 0; i < 600; ++i)
    fn(derive_history(testutil::random_writer_first_exec(rng, 8, 3, 2)));
}

Line criterion2() {
  Line line;
  const auto start = Clock::now();
  CorpusStats st;

  testutil::for_each_small_history(5, [&](const History& h) { compare_on(h, st, true); });
  const uint64_t exhaustive = st.histories;
  random_corpus([&](const History& h) { compare_on(h, st, true); });

  const double secs = seconds_since(start);
  if (st.disagreements > 0) {
    line.fail();
    line << st.disagreements << " fast/search disagreements; ";
  }
  if (secs >= 300.0) {
    line.fail();
    line << "took " << secs << " s (budget 300 s); ";
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "fast path equals search on %" PRIu64 " exhaustive + %" PRIu64
                " random histories (%.1f s)",
                exhaustive, st.histories - exhaustive, secs);
  if (line.ok) line << buf;
  return line;
}

Line criterion3() {
  Line line;
  const auto start = Clock::now();
  CorpusStats st;

  // Pattern-level over the exhaustive corpus, definition-level over the
  // random one; criterion 2 established the two views agree.
  testutil::for_each_small_history(5, [&](const History& h) { compare_on(h, st, false); });
  random_corpus([&](const History& h) { compare_on(h, st, true); });

  const double secs = seconds_since(start);
  if (st.implication_breaks > 0) {
    line.fail();
    line << st.implication_breaks << " histories stronger-but-not-weaker; ";
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "no history satisfies a stronger criterion while failing the weakest"
                " (%" PRIu64 " histories, %" PRIu64 " base violations, %.1f s)",
                st.histories, st.violations_seen, secs);
  if (line.ok) line << buf;
  return line;
}

// --- criterion 4: satisfiability reduction ----------------------------------

// Template family: for one and two variables, every multiset of at most four
// clauses over all clauses with at most two literals (empty clause included);
// for three and four variables, four fixed shapes (implication chain closed
// two ways, all-negative units, the contradictory square).
std::vector<Cnf> template_family() {
  std::vector<Cnf> out;
  for (uint32_t n = 1; n <= 2; ++n) {
    std::vector<std::vector<int32_t>> types;
    types.push_back({});  // empty clause: never satisfiable
    std::vector<int32_t> lits;
    for (uint32_t v = 1; v <= n; ++v) {
      lits.push_back(static_cast<int32_t>(v));
      lits.push_back(-static_cast<int32_t>(v));
    }
    for (size_t i = 0; i < lits.size(); ++i) {
      types.push_back({lits[i]});
      for (size_t j = i + 1; j < lits.size(); ++j) types.push_back({lits[i], lits[j]});
    }
    // Multisets of 1..4 clause types, enumerated as nondecreasing index tuples.
    std::vector<size_t> pick;
    std::function<void(size_t)> rec = [&](size_t lo) {
      if (!pick.empty()) {
        Cnf cnf;
        cnf.num_vars = n;
        for (size_t t : pick) cnf.clauses.push_back(types[t]);
        out.push_back(std::move(cnf));
      }
      if (pick.size() == 4) return;
      for (size_t t = lo; t < types.size(); ++t) {
        pick.push_back(t);
        rec(t);
        pick.pop_back();
      }
    };
    rec(0);
  }

  auto add = [&](uint32_t n, std::vector<std::vector<int32_t>> clauses) {
    Cnf cnf;
    cnf.num_vars = n;
    cnf.clauses = std::move(clauses);
    out.push_back(std::move(cnf));
  };
  add(3, {{1}, {-1, 2}, {-2, 3}});            // chain, satisfiable
  add(3, {{1}, {-1, 2}, {-2, 3}, {-3}});      // chain closed negatively
  add(3, {{-1}, {-2}, {-3}});                 // all-negative units
  add(3, {{1, 2}, {-1, 2}, {1, -2}, {-1, -2}});
  add(4, {{1}, {-1, 2}, {-2, 3}, {-3, 4}});   // chain, satisfiable
  add(4, {{1}, {-1, 2}, {-2, 3}, {-3, -1}});  // chain loops back negated
  add(4, {{-1}, {-2}, {-3}, {-4}});
  add(4, {{1, 2}, {-1, 2}, {1, -2}, {-1, -2}});
  return out;
}

Cnf random_cnf(SplitMix64& rng) {
  Cnf cnf;
  cnf.num_vars = 1 + static_cast<uint32_t>(rng.below(4));
  const size_t m = 1 + rng.below(4);
  for (size_t j = 0; j < m; ++j) {
    std::set<int32_t> clause;
    const size_t width = rng.below(4);  // 0..3 literals; empty stays possible
    for (size_t k = 0; k < width; ++k) {
      int32_t lit = 1 + static_cast<int32_t>(rng.below(cnf.num_vars));
      if (rng.chance(1, 2)) lit = -lit;
      clause.insert(lit);
    }
    cnf.clauses.emplace_back(clause.begin(), clause.end());
  }
  return cnf;
}

Line criterion4() {
  Line line;
  const auto start = Clock::now();

  std::vector<Cnf> instances = template_family();
  const size_t templated = instances.size();
  SplitMix64 rng(41);
  for (int i = 0; i < 100; ++i) instances.push_back(random_cnf(rng));

  OracleOptions wide;
  wide.op_cap = 64;
  uint64_t disagreements = 0;
  for (const Cnf& cnf : instances) {
    const bool sat = brute_force_sat(cnf);
    const History h = encode_sat(cnf);
    const OracleResult res = oracle_check(h, Criterion::CC, wide);
    if (res.consistent != sat) ++disagreements;
    if (res.consistent && !validate_witness(h, Criterion::CC, *res.witness)) ++disagreements;
  }

  const double secs = seconds_since(start);
  if (disagreements > 0) {
    line.fail();
    line << disagreements << " satisfiability disagreements; ";
  }
  if (secs >= 300.0) {
    line.fail();
    line << "took " << secs << " s (budget 300 s); ";
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "satisfiability equals consistency of the encoding on %zu template + %d"
                " random formulas (%.1f s)",
                templated, 100, secs);
  if (line.ok) line << buf;
  return line;
}

// --- criterion 5: full check at growing sizes -------------------------------

History sized_history(SplitMix64& rng, uint32_t n, uint32_t sites, uint32_t vars) {
  History h;
  std::vector<uint32_t> seq(sites, 0);
  std::vector<std::vector<uint64_t>> written(vars);
  uint64_t counter = 0;
  for (uint32_t i = 0; i < n; ++i) {
    const auto site = static_cast<uint32_t>(rng.below(sites));
    const auto var = static_cast<uint32_t>(rng.below(vars));
    const std::string name(1, static_cast<char>('x' + var));
    if (rng.below(100) < 40 || written[var].empty()) {
      h.ops.push_back(
          Operation{OpId{site, seq[site]++}, Method::Write, name, ++counter});
      written[var].push_back(counter);
    } else {
      const uint64_t value =
          rng.chance(1, 8) ? 0 : written[var][rng.below(written[var].size())];
      h.ops.push_back(Operation{OpId{site, seq[site]++}, Method::Read, name, value});
    }
  }
  return h;
}

Line criterion5() {
  Line line;
  SplitMix64 rng(5150);

  auto measure = [&](uint32_t n, int rounds) {
    double worst = 0;
    for (int i = 0; i < rounds; ++i) {
      History h = sized_history(rng, n, 4, 3);
      const auto start = Clock::now();
      auto v = check_all(h);
      worst = std::max(worst, seconds_since(start));
      (void)v;
    }
    return worst;
  };

  const double t200 = measure(200, 3);
  const double t400 = measure(400, 3);
  if (t200 >= 10.0) {
    line.fail();
    line << "n=200 took " << t200 << " s (budget 10 s); ";
  }
  if (t400 >= 300.0) {
    line.fail();
    line << "n=400 took " << t400 << " s (budget 300 s); ";
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "full check worst of 3: n=200 in %.2f s, n=400 in %.2f s",
                t200, t400);
  if (line.ok) line << buf;
  return line;
}

// --- criterion 6: online detector vs offline checker ------------------------

Line criterion6() {
  Line line;
  const auto start = Clock::now();
  SplitMix64 rng(66);
  uint64_t disagreements = 0, violations = 0;
  const int rounds = 1200;
  for (int i = 0; i < rounds; ++i) {
    Execution e = testutil::random_writer_first_exec(rng, 30, 3, 2);
    const bool flagged = monitor_execution(e).violation;
    const bool consistent = check_cc(derive_history(e)).consistent;
    if (flagged == consistent) ++disagreements;
    if (flagged) ++violations;
  }
  const double secs = seconds_since(start);
  if (disagreements > 0) {
    line.fail();
    line << disagreements << " monitor/checker disagreements; ";
  }
  if (secs >= 120.0) {
    line.fail();
    line << "took " << secs << " s (budget 120 s); ";
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "online detector agrees with the checker on %d streams, %" PRIu64
                " violating (%.1f s)",
                rounds, violations, secs);
  if (line.ok) line << buf;
  return line;
}

// --- criterion 7: store testing loop ----------------------------------------

uint32_t total_violations(const FuzzReport& r) {
  return r.cc_violations + r.cm_violations + r.ccv_violations;
}

// Reruns every flagged seed and demands a pattern witness that re-validates.
bool witnesses_revalidate(const SimConfig& base, const FuzzReport& rep, Line& line) {
  bool all_good = true;
  for (const FuzzRow& row : rep.rows) {
    if (row.cc && row.cm && row.ccv) continue;
    SimConfig c = base;
    c.seed = row.seed;
    History h = derive_history(run_sim(c));
    for (const auto& [crit, v] : check_all(h)) {
      const bool expect_ok = crit == Criterion::CC   ? row.cc
                             : crit == Criterion::CM ? row.cm
                                                     : row.ccv;
      if (v.consistent != expect_ok) {
        line << "seed " << row.seed << " rerun verdict changed; ";
        all_good = false;
        continue;
      }
      if (v.consistent) continue;
      if (!v.pattern || !validate_pattern(h, *v.pattern)) {
        line << "seed " << row.seed << " " << to_string(crit)
             << " witness failed re-validation; ";
        all_good = false;
      }
    }
  }
  return all_good;
}

Line criterion7() {
  Line line;
  const auto start = Clock::now();

  // Correct protocol: two configurations, 250 seeded runs each.
  SimConfig correct_small;
  correct_small.sites = 3;
  correct_small.variables = 2;
  correct_small.ops = 60;
  correct_small.seed = 1;
  SimConfig correct_large = correct_small;
  correct_large.sites = 4;
  correct_large.variables = 3;
  correct_large.ops = 80;
  correct_large.write_percent = 40;
  correct_large.seed = 1000;
  uint32_t correct_violations = total_violations(fuzz(correct_small, 250)) +
                                total_violations(fuzz(correct_large, 250));
  if (correct_violations > 0) {
    line.fail();
    line << correct_violations << " violations from the correct protocol; ";
  }

  struct MutantCase {
    Protocol protocol;
    uint32_t sites, vars, ops, write_percent;
  };
  const MutantCase mutants[] = {
      {Protocol::NoCausalDelivery, 2, 4, 80, 50},
      {Protocol::DropReadDeps, 3, 3, 80, 50},
      {Protocol::StaleRead, 3, 2, 60, 50},
      {Protocol::ReorderLocal, 3, 2, 60, 70},
  };
  for (const MutantCase& m : mutants) {
    SimConfig c;
    c.protocol = m.protocol;
    c.sites = m.sites;
    c.variables = m.vars;
    c.ops = m.ops;
    c.write_percent = m.write_percent;
    c.seed = 1;
    FuzzReport rep = fuzz(c, 200);
    if (total_violations(rep) == 0) {
      line.fail();
      line << to_string(m.protocol) << " produced no violation in 200 runs; ";
      continue;
    }
    if (!witnesses_revalidate(c, rep, line)) line.fail();
  }

  const double secs = seconds_since(start);
  if (secs >= 300.0) {
    line.fail();
    line << "took " << secs << " s (budget 300 s); ";
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "correct protocol clean over 500 runs, every mutant caught with validated"
                " witnesses (%.1f s)",
                secs);
  if (line.ok) line << buf;
  return line;
}

// --- criterion 8: command determinism ----------------------------------------

Line criterion8() {
  Line line;
  const auto start = Clock::now();
  const std::string bin = testutil::ccheck_bin();
  const std::string traces = testutil::trace_dir();
  const std::string tmp = "/tmp/ccheck_accept8_" + std::to_string(getpid());

  const std::string dimacs = tmp + ".cnf";
  {
    FILE* f = std::fopen(dimacs.c_str(), "w");
    if (f) {
      std::fputs("p cnf 2 2\n1 -2 0\n2 0\n", f);
      std::fclose(f);
    }
  }

  struct Cmd {
    std::string argv;
    std::string emits;  // file whose bytes must also repeat, if any
  };
  const Cmd cmds[] = {
      {"check '" + traces + "/flipflop_read.trace'", ""},
      {"check --mode oracle '" + traces + "/diverging_finals.trace'", ""},
      {"monitor '" + traces + "/overwritten_read.trace'", ""},
      {"simulate --seed 5 --ops 60 --sites 3 --vars 2 --protocol stale-read --emit " + tmp +
           ".trace",
       tmp + ".trace"},
      {"fuzz --runs 10 --seed 7 --protocol no-causal-delivery --sites 3 --ops 80"
       " --write-percent 40 --report " +
           tmp + ".report",
       tmp + ".report"},
      {"encode-sat " + dimacs + " --out " + tmp + ".sat.trace", tmp + ".sat.trace"},
  };

  for (const Cmd& c : cmds) {
    testutil::CmdResult first = testutil::run_cmd(bin + " " + c.argv);
    const std::string file_first = c.emits.empty() ? "" : read_file(c.emits);
    testutil::CmdResult second = testutil::run_cmd(bin + " " + c.argv);
    const std::string file_second = c.emits.empty() ? "" : read_file(c.emits);
    if (first.out != second.out || first.exit_code != second.exit_code) {
      line.fail();
      line << "'" << c.argv.substr(0, 30) << "...' stdout differs across runs; ";
    }
    if (file_first != file_second) {
      line.fail();
      line << "'" << c.argv.substr(0, 30) << "...' emitted file differs across runs; ";
    }
  }
  for (const char* suffix : {".cnf", ".trace", ".report", ".sat.trace"})
    std::remove((tmp + suffix).c_str());

  const double secs = seconds_since(start);
  char buf[128];
  std::snprintf(buf, sizeof buf, "every command repeats byte-identically (%.1f s)", secs);
  if (line.ok) line << buf;
  return line;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--all") {
      wanted = {1, 2, 3, 4, 5, 6, 7, 8};
    } else if (arg == "--criterion" && i + 1 < argc) {
      wanted.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--all | --criterion N]...\n", argv[0]);
      return 2;
    }
  }
  if (wanted.empty()) wanted = {1, 2, 3, 4, 5, 6, 7, 8};

  using Fn = Line (*)();
  const Fn table[] = {criterion1, criterion2, criterion3, criterion4,
                      criterion5, criterion6, criterion7, criterion8};
  int failures = 0;
  for (int n : wanted) {
    if (n < 1 || n > 8) {
      std::fprintf(stderr, "no such criterion: %d\n", n);
      return 2;
    }
    Line line = table[n - 1]();
    std::printf("CRITERION %d %s %s\n", n, line.ok ? "PASS" : "FAIL",
                line.detail.str().c_str());
    std::fflush(stdout);
    if (!line.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
