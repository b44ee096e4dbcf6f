#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ccheck/history.hpp"

namespace ccheck {

// Online detector for causal-consistency violations in a live operation
// stream.  It is a register automaton run over the execution: a set of
// configurations (control state + register valuation) is maintained, every
// configuration may skip any event, and a configuration advances by consuming
// an event that matches one of its outgoing guards.  Acceptance is latched.
//
// The detector is exact (accepts iff the stream's history violates causal
// consistency) for writer-first executions: streams where no read returns a
// value before the write producing that value has been applied.  Streams
// produced by real stores are writer-first by construction; for arbitrary
// streams acceptance still implies a genuine violation in some prefix.

enum class MState : uint8_t {
  Start1,  // waiting to flag a read of a value never written so far
  Start2,  // waiting to pick the source write of an overwritten-value run
  Start3,  // waiting to pick the source write of a missed-write run
  Head1,   // chasing causal successors of the source write (phase 1)
  Tail1,   // phase-1 chain write consumed, waiting for its reader
  Head2,   // chasing causal successors of the overwriting write (phase 2)
  Tail2,   // phase-2 chain write consumed, waiting for its reader
  Head0,   // chasing causal successors of the source write (missed-write)
  Tail0,   // missed-write chain write consumed, waiting for its reader
  Err1,
  Err2,
  Err3,
};

enum class MonitorBranch : uint8_t {
  UnwrittenValue = 1,   // a read returned a nonzero value nobody wrote yet
  OverwrittenValue = 2, // a read returned a value causally overwritten
  MissedWrite = 3,      // a read returned 0 despite a causally prior write
};

std::string to_string(MonitorBranch b);

enum class GuardKind : uint8_t {
  AnyWrite,           // wr(_,_)
  NonzeroRead,        // rd(_) with value != 0
  FreshNonzeroRead,   // NonzeroRead and no earlier wr of (var, value)
  WriteAtP,           // wr(_,_) with site == p
  WriteVarXAtPNotD1,  // wr(x',_) with site == p and value != d1
  ReadX1D1,           // rd(x') with value == d1
  ReadX1D1AtP,        // ReadX1D1 and site == p
  ReadX1D2,           // rd(x') with value == d2
  ReadCxCd,           // rd(cx) with value == cd
  ReadX1ZeroAtP,      // rd(x') with value == 0 and site == p
};

enum class EffectKind : uint8_t {
  None,
  BindEntry,       // x' = var, d1 = value, p = site
  BindChainWrite,  // cx = var, cd = value
  BindReader,      // p = site
  BindD2,          // d2 = value
};

struct MonitorTransition {
  MState from;
  MState to;
  GuardKind guard;
  EffectKind effect;
  uint8_t chain;  // nonzero groups the three chain-following loops
};

const std::vector<MonitorTransition>& monitor_transitions();
bool monitor_state_accepting(MState s);

class Monitor {
 public:
  explicit Monitor(size_t frontier_cap = size_t{1} << 20);

  // Consumes one event.  Throws std::invalid_argument if the stream stops
  // being differentiated (a write of 0 or a duplicate (var, value) write) and
  // std::runtime_error if the configuration set exceeds the cap.
  void feed(const Operation& op);

  bool accepted() const { return branch_.has_value(); }
  std::optional<MonitorBranch> branch() const { return branch_; }
  const std::optional<OpId>& accepted_at() const { return accepted_at_; }
  size_t frontier_size() const { return frontier_.size(); }
  size_t max_frontier_size() const { return max_frontier_; }
  size_t events_consumed() const { return events_; }

 private:
  static constexpr uint32_t kUnset32 = UINT32_MAX;
  static constexpr uint64_t kUnset64 = UINT64_MAX;

  struct Config {
    MState state;
    uint32_t x_var = kUnset32;  // x'
    uint64_t d1 = kUnset64;
    uint64_t d2 = kUnset64;
    uint32_t p = kUnset32;
    uint32_t cx = kUnset32;
    uint64_t cd = kUnset64;

    friend bool operator<(const Config& a, const Config& b) {
      auto key = [](const Config& c) {
        return std::tuple(c.state, c.x_var, c.d1, c.d2, c.p, c.cx, c.cd);
      };
      return key(a) < key(b);
    }
  };

  uint32_t intern(const std::string& var);
  bool guard_holds(const Config& c, GuardKind g, const Operation& op, uint32_t var) const;
  static Config apply_effect(Config c, MState to, EffectKind e, const Operation& op,
                             uint32_t var);

  size_t cap_;
  std::set<Config> frontier_;
  std::map<std::string, uint32_t> var_ids_;
  std::set<std::pair<uint32_t, uint64_t>> written_;
  std::optional<MonitorBranch> branch_;
  std::optional<OpId> accepted_at_;
  size_t max_frontier_ = 0;
  size_t events_ = 0;
};

struct MonitorOutcome {
  bool violation = false;
  std::optional<MonitorBranch> branch;
  std::optional<OpId> at;
  size_t events_consumed = 0;
};

// Runs the detector over the whole stream, stopping at the first acceptance.
MonitorOutcome monitor_execution(const Execution& e, size_t frontier_cap = size_t{1} << 20);

}  // namespace ccheck
