#include "ccheck/monitor.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccheck {

std::string to_string(MonitorBranch b) {
  switch (b) {
    case MonitorBranch::UnwrittenValue: return "unwritten-value";
    case MonitorBranch::OverwrittenValue: return "overwritten-value";
    case MonitorBranch::MissedWrite: return "missed-write";
  }
  return "?";
}

const std::vector<MonitorTransition>& monitor_transitions() {
  using S = MState;
  using G = GuardKind;
  using E = EffectKind;
  static const std::vector<MonitorTransition> table = {
      // Reads of values nobody wrote yet are flagged immediately.
      {S::Start1, S::Err1, G::FreshNonzeroRead, E::None, 0},

      // Overwritten value: source write, causal chain, overwriting write on
      // the chain's current site, second chain, read of the old value.
      {S::Start2, S::Head1, G::AnyWrite, E::BindEntry, 0},
      {S::Start2, S::Head1, G::NonzeroRead, E::BindEntry, 0},
      {S::Head1, S::Head1, G::ReadX1D1, E::BindReader, 1},
      {S::Head1, S::Tail1, G::WriteAtP, E::BindChainWrite, 1},
      {S::Tail1, S::Head1, G::ReadCxCd, E::BindReader, 1},
      {S::Head1, S::Head2, G::WriteVarXAtPNotD1, E::BindD2, 0},
      {S::Tail1, S::Head2, G::WriteVarXAtPNotD1, E::BindD2, 0},
      {S::Head2, S::Head2, G::ReadX1D2, E::BindReader, 2},
      {S::Head2, S::Tail2, G::WriteAtP, E::BindChainWrite, 2},
      {S::Tail2, S::Head2, G::ReadCxCd, E::BindReader, 2},
      {S::Head2, S::Err2, G::ReadX1D1AtP, E::None, 0},
      {S::Tail2, S::Err2, G::ReadX1D1AtP, E::None, 0},

      // Missed write: source write, causal chain, read of 0 on the chain's
      // current site.
      {S::Start3, S::Head0, G::AnyWrite, E::BindEntry, 0},
      {S::Start3, S::Head0, G::NonzeroRead, E::BindEntry, 0},
      {S::Head0, S::Head0, G::ReadX1D1, E::BindReader, 3},
      {S::Head0, S::Tail0, G::WriteAtP, E::BindChainWrite, 3},
      {S::Tail0, S::Head0, G::ReadCxCd, E::BindReader, 3},
      {S::Head0, S::Err3, G::ReadX1ZeroAtP, E::None, 0},
      {S::Tail0, S::Err3, G::ReadX1ZeroAtP, E::None, 0},
  };
  return table;
}

bool monitor_state_accepting(MState s) {
  return s == MState::Err1 || s == MState::Err2 || s == MState::Err3;
}

namespace {

MonitorBranch branch_of(MState s) {
  switch (s) {
    case MState::Err1: return MonitorBranch::UnwrittenValue;
    case MState::Err2: return MonitorBranch::OverwrittenValue;
    default: return MonitorBranch::MissedWrite;
  }
}

}  // namespace

Monitor::Monitor(size_t frontier_cap) : cap_(frontier_cap) {
  frontier_.insert(Config{MState::Start1});
  frontier_.insert(Config{MState::Start2});
  frontier_.insert(Config{MState::Start3});
}

uint32_t Monitor::intern(const std::string& var) {
  auto [it, _] = var_ids_.emplace(var, static_cast<uint32_t>(var_ids_.size()));
  return it->second;
}

bool Monitor::guard_holds(const Config& c, GuardKind g, const Operation& op,
                          uint32_t var) const {
  const bool is_write = op.method == Method::Write;
  switch (g) {
    case GuardKind::AnyWrite:
      return is_write;
    case GuardKind::NonzeroRead:
      return !is_write && op.value != 0;
    case GuardKind::FreshNonzeroRead:
      return !is_write && op.value != 0 && written_.count({var, op.value}) == 0;
    case GuardKind::WriteAtP:
      return is_write && op.id.site == c.p;
    case GuardKind::WriteVarXAtPNotD1:
      return is_write && var == c.x_var && op.id.site == c.p && op.value != c.d1;
    case GuardKind::ReadX1D1:
      return !is_write && var == c.x_var && op.value == c.d1;
    case GuardKind::ReadX1D1AtP:
      return !is_write && var == c.x_var && op.value == c.d1 && op.id.site == c.p;
    case GuardKind::ReadX1D2:
      return !is_write && var == c.x_var && op.value == c.d2;
    case GuardKind::ReadCxCd:
      return !is_write && var == c.cx && op.value == c.cd;
    case GuardKind::ReadX1ZeroAtP:
      return !is_write && var == c.x_var && op.value == 0 && op.id.site == c.p;
  }
  return false;
}

Monitor::Config Monitor::apply_effect(Config c, MState to, EffectKind e,
                                      const Operation& op, uint32_t var) {
  c.state = to;
  switch (e) {
    case EffectKind::None:
      break;
    case EffectKind::BindEntry:
      c.x_var = var;
      c.d1 = op.value;
      c.p = op.id.site;
      break;
    case EffectKind::BindChainWrite:
      c.cx = var;
      c.cd = op.value;
      break;
    case EffectKind::BindReader:
      c.p = op.id.site;
      break;
    case EffectKind::BindD2:
      c.d2 = op.value;
      break;
  }
  return c;
}

void Monitor::feed(const Operation& op) {
  ++events_;
  const uint32_t var = intern(op.variable);
  if (op.method == Method::Write) {
    if (op.value == 0)
      throw std::invalid_argument("stream is not differentiated: write of 0");
    if (!written_.insert({var, op.value}).second)
      throw std::invalid_argument("stream is not differentiated: duplicate write of " +
                                  op.variable + "=" + std::to_string(op.value));
  }
  if (branch_) return;  // acceptance latched

  std::vector<Config> fresh;
  for (const Config& c : frontier_) {
    for (const MonitorTransition& t : monitor_transitions()) {
      if (t.from != c.state) continue;
      if (!guard_holds(c, t.guard, op, var)) continue;
      Config next = apply_effect(c, t.to, t.effect, op, var);
      if (monitor_state_accepting(next.state)) {
        if (!branch_) {
          branch_ = branch_of(next.state);
          accepted_at_ = op.id;
        }
        continue;
      }
      fresh.push_back(next);
    }
  }
  for (const Config& c : fresh) frontier_.insert(c);
  max_frontier_ = std::max(max_frontier_, frontier_.size());
  if (frontier_.size() > cap_)
    throw std::runtime_error("monitor configuration set exceeded cap");
}

MonitorOutcome monitor_execution(const Execution& e, size_t frontier_cap) {
  Monitor m(frontier_cap);
  MonitorOutcome out;
  for (const Operation& op : e.events) {
    m.feed(op);
    if (m.accepted()) {
      out.violation = true;
      out.branch = m.branch();
      out.at = m.accepted_at();
      out.events_consumed = m.events_consumed();
      return out;
    }
  }
  out.events_consumed = m.events_consumed();
  return out;
}

}  // namespace ccheck
