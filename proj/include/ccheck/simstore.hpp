#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccheck/history.hpp"

namespace ccheck {

// Simulated replicated key-value store.  Each site keeps a full copy; every
// variable has a home site (var mod sites) and is only written there, so
// same-variable writes are never concurrent; writes are broadcast and applied
// remotely after a random network delay, gated by a vector-clock causal
// delivery condition; applies are resolved last-writer-wins by (clock sum,
// site), which under single-home writes always favours the causally newest
// write.  The Correct protocol produces only consistent histories; the
// mutants each break one specific part of the protocol and are used to
// exercise the checkers end to end.
enum class Protocol : uint8_t {
  Correct,
  NoCausalDelivery,  // apply messages on arrival, ignoring causal gating
  DropReadDeps,      // broadcast clocks carry only the sender's own counter
  StaleRead,         // reads occasionally invent a value nobody wrote
  ReorderLocal,      // a site occasionally applies two of its own writes swapped
};

std::string to_string(Protocol p);
std::optional<Protocol> parse_protocol(const std::string& name);

struct SimConfig {
  uint32_t sites = 3;
  uint32_t variables = 2;
  uint32_t ops = 40;
  uint64_t seed = 1;
  Protocol protocol = Protocol::Correct;
  uint32_t write_percent = 50;  // probability of an op being a write, in %
};

// Runs one simulation and returns the operation stream in issue order.
// Write values are drawn from a global counter, so the stream is
// differentiated by construction.  Throws std::invalid_argument on a
// nonsensical config (no sites, no variables, write_percent > 100).
Execution run_sim(const SimConfig& cfg);

struct FuzzRow {
  uint64_t seed;
  bool cc;
  bool cm;
  bool ccv;
};

struct FuzzReport {
  std::vector<FuzzRow> rows;
  uint32_t cc_violations = 0;
  uint32_t cm_violations = 0;
  uint32_t ccv_violations = 0;
};

// Runs `runs` simulations with seeds base.seed, base.seed+1, ... and checks
// every resulting history against all three criteria.
FuzzReport fuzz(const SimConfig& base, uint32_t runs);

}  // namespace ccheck
