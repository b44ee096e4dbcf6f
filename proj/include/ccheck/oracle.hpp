#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccheck/bitrel.hpp"
#include "ccheck/history.hpp"
#include "ccheck/relations.hpp"

namespace ccheck {

enum class Criterion : uint8_t { CC, CM, CCv };

std::string to_string(Criterion c);  // "cc" | "cm" | "ccv"

// One step of a store run: full label with the return value decided. For
// writes `value` is the argument and `ret` stays empty; for reads `value`
// is unused and `ret` is what the read returned.
struct SpecSequence {
  struct Item {
    Method method = Method::Read;
    std::string variable;
    uint64_t value = 0;
    std::optional<uint64_t> ret;
  };
  std::vector<Item> items;
};

// Membership in the sequential read-write store semantics: every read
// returns the latest preceding write to its variable, or 0 when there is
// none. All items must carry their return values (reads: ret set).
bool spec_member(const SpecSequence& s);

// Poset with per-operation labels where read returns may be hidden; used as
// the left-hand side of refinement checks against concrete sequences.
struct LabeledPoset {
  struct Node {
    Method method = Method::Read;
    std::string variable;
    uint64_t value = 0;   // write argument; meaningful for reads only if ret_visible
    bool ret_visible = true;
  };
  std::vector<Node> nodes;
  BitRel order;  // strict, transitive, over node indices
};

// Hides the return values of every read not in `keep` (indices into nodes).
LabeledPoset hide_return_values(const LabeledPoset& p, std::span<const uint32_t> keep);

// True when s is a linearization of p: `order[k]` names the node the k-th
// sequence item stands for (a bijection), every p edge is respected, and
// each item's label equals the node's label, with hidden read returns
// matching any value.
bool poset_refines(const LabeledPoset& p, const SpecSequence& s, std::span<const uint32_t> order);

// A satisfying assignment of the existential part of a criterion: the
// causal order, the arbitration (total, as an index permutation; CCv only)
// and one witnessing store run per operation. Everything needed to
// re-validate a "consistent" verdict definitionally.
struct WitnessOrders {
  BitRel co;
  std::optional<std::vector<uint32_t>> arb;
  struct PerOp {
    std::vector<uint32_t> op_order;  // operation indices, |causal past of o|
    SpecSequence seq;
  };
  std::map<uint32_t, PerOp> per_op;
};

struct OracleResult {
  bool consistent = false;
  std::optional<WitnessOrders> witness;  // set when consistent
};

struct OracleOptions {
  size_t op_cap = 10;
};

class OracleCapExceeded : public std::runtime_error {
 public:
  OracleCapExceeded(size_t n, size_t cap)
      : std::runtime_error("history has " + std::to_string(n) +
                           " operations, oracle cap is " + std::to_string(cap)) {}
};

// Decides a criterion by exhaustive search over causal orders and store
// runs, straight from the definitions. Exponential; guarded by op_cap.
// Accepts non-differentiated histories.
OracleResult oracle_check(const History& h, Criterion crit, const OracleOptions& opts = {});

// Re-validates a witness against the axioms of `crit` using spec_member and
// poset_refines only. Used by tests to keep the oracle honest.
bool validate_witness(const History& h, Criterion crit, const WitnessOrders& w);

// CNF formula with 1-based variable indices; a clause is a list of nonzero
// literals, negative for negated variables.
struct Cnf {
  uint32_t num_vars = 0;
  std::vector<std::vector<int32_t>> clauses;
};

// DIMACS cnf reader: `c` comments, `p cnf <vars> <clauses>` header,
// 0-terminated clauses. Throws ParseError with line numbers.
Cnf parse_dimacs(std::istream& in);

// Reduction from satisfiability to causal consistency of a single-variable
// history. Per formula variable i there are two writer sites: one writes
// the codes of the clauses containing +x_i then the value i, the other the
// codes of clauses containing -x_i then i. A final site reads 1..n and then
// every clause code. Clause j gets code num_vars + j. The resulting history
// is causally consistent iff the formula is satisfiable.
History encode_sat(const Cnf& cnf);

// Deterministic interleaving of encode_sat's history (site-major order),
// convenient for writing trace files.
Execution to_execution_site_major(const History& h);

// Truth-table satisfiability of a CNF; reference for the reduction tests.
bool brute_force_sat(const Cnf& cnf);

}  // namespace ccheck
