#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccheck/history.hpp"
#include "ccheck/oracle.hpp"
#include "ccheck/relations.hpp"

namespace ccheck {

// The violation shapes. A differentiated history is CC iff it has none of
// the first four; CM additionally excludes WriteHBInitRead and CyclicHB;
// CCv additionally excludes CyclicCF.
enum class PatternKind : uint8_t {
  CyclicCO,         // cycle in po + rf
  WriteCOInitRead,  // a read of 0 with a causally earlier write to its variable
  ThinAirRead,      // a read of a never-written nonzero value
  WriteCORead,      // w1 <co w2 <co r1 on one variable while r1 reads w1
  WriteHBInitRead,  // a read of 0 with an hb-earlier write to its variable
  CyclicHB,         // cycle in hb relative to some operation
  CyclicCF,         // cycle in cf + co
};

std::string to_string(PatternKind k);

struct BadPattern {
  PatternKind kind;
  // Role-tagged operation ids, e.g. {"w1", ...}, {"w2", ...}, {"r1", ...}
  // for WriteCORead or {"cycle", ...} members for the cyclic kinds.
  // WriteHBInitRead and CyclicHB also carry the scope operation "o".
  std::vector<std::pair<std::string, OpId>> witness;
};

struct DetectOptions {
  RelationOptions relations;
};

// Everything detect_patterns found, in fixed kind order. When po + rf is
// cyclic only CyclicCO and ThinAirRead are decided; the co-dependent kinds
// are listed in not_evaluated instead.
struct PatternReport {
  std::vector<BadPattern> found;
  std::vector<PatternKind> not_evaluated;

  bool has(PatternKind k) const {
    for (const auto& p : found)
      if (p.kind == k) return true;
    return false;
  }
  const BadPattern* first_of(std::initializer_list<PatternKind> kinds) const {
    for (const auto& p : found)
      for (PatternKind k : kinds)
        if (p.kind == k) return &p;
    return nullptr;
  }
};

// Scans a differentiated history for every pattern kind. Witnesses are
// deterministic: lowest (site, seq) indices first.
PatternReport detect_patterns(const History& h, const DetectOptions& opts = {});

enum class CheckMode : uint8_t { Auto, FastPath, Oracle };

struct CheckOptions {
  CheckMode mode = CheckMode::Auto;
  OracleOptions oracle;
  DetectOptions detect;
};

struct Verdict {
  Criterion criterion = Criterion::CC;
  bool consistent = true;
  CheckMode used = CheckMode::FastPath;  // FastPath or Oracle, never Auto
  std::optional<BadPattern> pattern;     // fast path, violation only
  std::optional<WitnessOrders> orders;   // oracle, consistent only
};

// Criterion checks. Auto mode runs the pattern search on differentiated
// histories and falls back to the oracle otherwise; FastPath on a
// non-differentiated history is a contract error.
Verdict check_cc(const History& h, const CheckOptions& opts = {});
Verdict check_cm(const History& h, const CheckOptions& opts = {});
Verdict check_ccv(const History& h, const CheckOptions& opts = {});

// All three criteria over one shared relation computation.
std::map<Criterion, Verdict> check_all(const History& h, const CheckOptions& opts = {});

// Re-checks a reported pattern against freshly computed relations; tests
// use this to guarantee every emitted witness is real.
bool validate_pattern(const History& h, const BadPattern& p);

}  // namespace ccheck
