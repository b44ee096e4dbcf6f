#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccheck/bitrel.hpp"
#include "ccheck/history.hpp"

namespace ccheck {

// Contiguous re-indexing of a history plus the label lookups every relation
// needs. Index order is (site, seq), which makes witness selection and
// cycle reporting deterministic.
struct HistoryIndex {
  explicit HistoryIndex(const History& h);

  std::vector<Operation> ops;            // sorted by (site, seq)
  std::vector<int> var_ids;              // interned variable per op
  std::vector<std::string> var_names;    // id -> name
  size_t num_sites = 0;
  std::vector<std::vector<uint32_t>> by_site;

  size_t size() const { return ops.size(); }
  bool is_write(uint32_t i) const { return ops[i].method == Method::Write; }
  bool is_read(uint32_t i) const { return ops[i].method == Method::Read; }
  uint64_t value(uint32_t i) const { return ops[i].value; }
  int var(uint32_t i) const { return var_ids[i]; }
  OpId id(uint32_t i) const { return ops[i].id; }

  // Write indices labeled (var, value); several entries only when the
  // history is not differentiated.
  const std::vector<uint32_t>* writers_of(int var, uint64_t value) const;

  // Program order as immediate edges (site-adjacent pairs).
  BitRel po_edges() const;
  // Full program order (transitive).
  BitRel po() const;
  bool po_before(uint32_t a, uint32_t b) const {
    return ops[a].id.site == ops[b].id.site && ops[a].id.seq < ops[b].id.seq;
  }

 private:
  std::map<std::pair<int, uint64_t>, std::vector<uint32_t>> writers_;
};

// Read-from: pairs every read rd(x) # v with v != 0 with the write wr(x, v).
// Requires a differentiated history so the pairing is a function of the
// read. Reads of 0 and reads of never-written values have no edge.
BitRel compute_rf(const HistoryIndex& ix);

struct CoResult {
  BitRel co;  // transitive closure of po + rf; only meaningful when acyclic
  // When po + rf has a cycle, the offending node sequence; co is then the
  // (reflexive-on-cycle) closure and must not feed further pattern checks.
  std::optional<std::vector<uint32_t>> cycle;
};

// Causal order: transitive closure of program order and read-from.
CoResult compute_co(const HistoryIndex& ix, const BitRel& rf);

// Conflict: w1 <cf w2 whenever some read of w2's (variable, value) is
// causally after w1 and w1 writes the same variable with a different value.
// Smallest such relation; differentiated histories only.
BitRel compute_cf(const HistoryIndex& ix, const BitRel& rf, const BitRel& co);

// Happened-before relative to operation o: the least transitive relation
// over the causal past of o that contains co restricted to that past and is
// closed under the rule
//
//   w1 <hb r2, r2 po-before-or-equal o, r2 reads (x, d2) written by w2,
//   w1 writes x with d1 != d2   ==>   w1 <hb w2
//
// Iteration applies the rule, re-closes transitively and repeats to a
// fixpoint. hb(o) grows monotonically along program order, so checks only
// need the po-maximal operation of each site.
BitRel compute_hb(const HistoryIndex& ix, const BitRel& rf, const BitRel& co, uint32_t o);

struct RelationOptions {
  // Diagnostic mode: also compute hb for every operation, not just the
  // po-maximal ones. Pattern verdicts must not change.
  bool hb_per_operation = false;
};

// One-stop computation shared by the consistency checks. When po + rf is
// cyclic, cf and hb are left empty and `co.cycle` carries the witness.
struct RelationSet {
  size_t n = 0;
  BitRel rf;
  CoResult co;
  BitRel cf;                         // empty when co is cyclic
  std::map<uint32_t, BitRel> hb;     // keyed by the operation hb is relative to
};

RelationSet compute_relations(const HistoryIndex& ix, const RelationOptions& opts = {});

}  // namespace ccheck
