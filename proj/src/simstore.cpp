#include "ccheck/simstore.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "ccheck/consistency.hpp"
#include "ccheck/rng.hpp"

namespace ccheck {

std::string to_string(Protocol p) {
  switch (p) {
    case Protocol::Correct: return "correct";
    case Protocol::NoCausalDelivery: return "no-causal-delivery";
    case Protocol::DropReadDeps: return "drop-read-deps";
    case Protocol::StaleRead: return "stale-read";
    case Protocol::ReorderLocal: return "reorder-local";
  }
  return "?";
}

std::optional<Protocol> parse_protocol(const std::string& name) {
  for (Protocol p : {Protocol::Correct, Protocol::NoCausalDelivery, Protocol::DropReadDeps,
                     Protocol::StaleRead, Protocol::ReorderLocal})
    if (name == to_string(p)) return p;
  return std::nullopt;
}

namespace {

struct Message {
  uint32_t origin;
  uint32_t var;
  uint64_t value;
  std::vector<uint64_t> clock;  // sender's vector clock after the write
  uint64_t arrival;             // step after which the destination may apply it
  uint64_t issue;               // global issue index, for deterministic ties
};

struct Cell {
  uint64_t value = 0;
  uint64_t ts_sum = 0;  // 0 = initial value, loses against any write
  uint32_t ts_site = 0;
};

struct Site {
  std::vector<uint64_t> clock;
  std::vector<Cell> store;
  std::vector<Message> inbox;
  std::optional<std::pair<uint32_t, Message>> stash;  // ReorderLocal only
  uint32_t next_seq = 0;
};

uint64_t clock_sum(const std::vector<uint64_t>& clock) {
  return std::accumulate(clock.begin(), clock.end(), uint64_t{0});
}

bool lww_wins(const Message& m, const Cell& cell) {
  uint64_t sum = clock_sum(m.clock);
  return sum > cell.ts_sum || (sum == cell.ts_sum && m.origin > cell.ts_site);
}

void apply_message(Site& site, const Message& m) {
  Cell& cell = site.store[m.var];
  if (lww_wins(m, cell)) {
    cell.value = m.value;
    cell.ts_sum = clock_sum(m.clock);
    cell.ts_site = m.origin;
  }
  for (size_t j = 0; j < site.clock.size(); ++j)
    site.clock[j] = std::max(site.clock[j], m.clock[j]);
}

bool deliverable(const Site& site, const Message& m, uint64_t now, Protocol protocol) {
  if (m.arrival > now) return false;
  if (protocol == Protocol::NoCausalDelivery) return true;
  // Causal gating: next message from the origin in sequence, and every write
  // the sender knew about must already be applied here.
  if (m.clock[m.origin] != site.clock[m.origin] + 1) return false;
  for (size_t j = 0; j < m.clock.size(); ++j)
    if (j != m.origin && m.clock[j] > site.clock[j]) return false;
  return true;
}

void drain_inbox(Site& site, uint64_t now, Protocol protocol) {
  bool progress = true;
  while (progress) {
    progress = false;
    // Earliest deliverable message first; issue index breaks ties so runs
    // are reproducible.
    size_t best = site.inbox.size();
    for (size_t i = 0; i < site.inbox.size(); ++i) {
      const Message& m = site.inbox[i];
      if (!deliverable(site, m, now, protocol)) continue;
      if (best == site.inbox.size() ||
          std::pair(m.arrival, m.issue) <
              std::pair(site.inbox[best].arrival, site.inbox[best].issue)) {
        best = i;
      }
    }
    if (best < site.inbox.size()) {
      apply_message(site, site.inbox[best]);
      site.inbox.erase(site.inbox.begin() + static_cast<ptrdiff_t>(best));
      progress = true;
    }
  }
}

}  // namespace

Execution run_sim(const SimConfig& cfg) {
  if (cfg.sites == 0) throw std::invalid_argument("run_sim needs at least one site");
  if (cfg.variables == 0) throw std::invalid_argument("run_sim needs at least one variable");
  if (cfg.write_percent > 100)
    throw std::invalid_argument("write_percent must be between 0 and 100");

  SplitMix64 rng(cfg.seed);
  std::vector<Site> sites(cfg.sites);
  for (Site& s : sites) {
    s.clock.assign(cfg.sites, 0);
    s.store.assign(cfg.variables, Cell{});
  }
  std::vector<std::string> var_names;
  for (uint32_t v = 0; v < cfg.variables; ++v) var_names.push_back("x" + std::to_string(v));

  Execution exec;
  uint64_t write_counter = 0;
  uint64_t bogus_counter = 0;

  for (uint64_t step = 0; step < cfg.ops; ++step) {
    uint32_t q = rng.below(cfg.sites);
    uint32_t var = rng.below(cfg.variables);
    bool is_write = rng.below(100) < cfg.write_percent;
    if (is_write) q = var % cfg.sites;  // writes run at the variable's home site
    Site& site = sites[q];

    if (is_write) {
      uint64_t value = ++write_counter;
      site.clock[q] += 1;
      Message m{q, var, value, site.clock, 0, step};
      exec.events.push_back(
          {OpId{q, site.next_seq++}, Method::Write, var_names[var], value});

      bool stash_now = cfg.protocol == Protocol::ReorderLocal && !site.stash &&
                       rng.chance(1, 8);
      if (stash_now) {
        site.stash = {var, m};  // broadcast below, local apply deferred
      } else {
        apply_message(site, m);
        if (site.stash && site.stash->first == var) {
          // The deferred older write lands after this one, swapping the two
          // local applies.
          Cell& cell = site.store[var];
          cell.value = site.stash->second.value;
          cell.ts_sum = clock_sum(site.stash->second.clock);
          cell.ts_site = site.stash->second.origin;
          site.stash.reset();
        }
      }

      for (uint32_t r = 0; r < cfg.sites; ++r) {
        if (r == q) continue;
        Message remote = m;
        if (cfg.protocol == Protocol::DropReadDeps) {
          for (size_t j = 0; j < remote.clock.size(); ++j)
            if (j != q) remote.clock[j] = 0;
        }
        uint64_t delay = 0;
        while (rng.chance(7, 8)) ++delay;  // geometric, mean seven extra steps
        remote.arrival = step + 1 + delay;
        sites[r].inbox.push_back(remote);
      }
    } else {
      uint64_t value;
      if (cfg.protocol == Protocol::StaleRead && rng.chance(1, 16)) {
        value = 1000000 + ++bogus_counter;  // never written by anyone
      } else {
        value = site.store[var].value;
      }
      exec.events.push_back(
          {OpId{q, site.next_seq++}, Method::Read, var_names[var], value});
    }

    for (uint32_t r = 0; r < cfg.sites; ++r) drain_inbox(sites[r], step, cfg.protocol);
  }
  return exec;
}

FuzzReport fuzz(const SimConfig& base, uint32_t runs) {
  FuzzReport report;
  for (uint32_t i = 0; i < runs; ++i) {
    SimConfig cfg = base;
    cfg.seed = base.seed + i;
    History h = derive_history(run_sim(cfg));
    auto verdicts = check_all(h);
    FuzzRow row{cfg.seed, verdicts.at(Criterion::CC).consistent,
                verdicts.at(Criterion::CM).consistent,
                verdicts.at(Criterion::CCv).consistent};
    if (!row.cc) ++report.cc_violations;
    if (!row.cm) ++report.cm_violations;
    if (!row.ccv) ++report.ccv_violations;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace ccheck
