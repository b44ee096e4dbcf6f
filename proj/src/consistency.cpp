#include "ccheck/consistency.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccheck {

std::string to_string(PatternKind k) {
  switch (k) {
    case PatternKind::CyclicCO: return "CyclicCO";
    case PatternKind::WriteCOInitRead: return "WriteCOInitRead";
    case PatternKind::ThinAirRead: return "ThinAirRead";
    case PatternKind::WriteCORead: return "WriteCORead";
    case PatternKind::WriteHBInitRead: return "WriteHBInitRead";
    case PatternKind::CyclicHB: return "CyclicHB";
    case PatternKind::CyclicCF: return "CyclicCF";
  }
  return "?";
}

namespace {

std::vector<std::pair<std::string, OpId>> cycle_witness(const HistoryIndex& ix,
                                                        const std::vector<uint32_t>& cycle) {
  std::vector<std::pair<std::string, OpId>> w;
  for (uint32_t i : cycle) w.emplace_back("cycle", ix.id(i));
  return w;
}

// First read of a never-written nonzero value, by ascending index.
std::optional<BadPattern> scan_thin_air(const HistoryIndex& ix) {
  for (uint32_t r = 0; r < ix.size(); ++r) {
    if (!ix.is_read(r) || ix.value(r) == 0) continue;
    const auto* ws = ix.writers_of(ix.var(r), ix.value(r));
    if (!ws || ws->empty())
      return BadPattern{PatternKind::ThinAirRead, {{"r", ix.id(r)}}};
  }
  return std::nullopt;
}

std::optional<BadPattern> scan_write_co_init_read(const HistoryIndex& ix, const BitRel& co) {
  for (uint32_t r = 0; r < ix.size(); ++r) {
    if (!ix.is_read(r) || ix.value(r) != 0) continue;
    for (uint32_t w = 0; w < ix.size(); ++w) {
      if (!ix.is_write(w) || ix.var(w) != ix.var(r)) continue;
      if (co.at(w, r))
        return BadPattern{PatternKind::WriteCOInitRead, {{"w", ix.id(w)}, {"r", ix.id(r)}}};
    }
  }
  return std::nullopt;
}

std::optional<BadPattern> scan_write_co_read(const HistoryIndex& ix, const BitRel& rf,
                                             const BitRel& co) {
  for (uint32_t r1 = 0; r1 < ix.size(); ++r1) {
    if (!ix.is_read(r1)) continue;
    for (uint32_t w1 = 0; w1 < ix.size(); ++w1) {
      if (!rf.at(w1, r1)) continue;
      for (uint32_t w2 = 0; w2 < ix.size(); ++w2) {
        if (!ix.is_write(w2) || w2 == w1 || ix.var(w2) != ix.var(w1)) continue;
        if (co.at(w1, w2) && co.at(w2, r1))
          return BadPattern{PatternKind::WriteCORead,
                            {{"w1", ix.id(w1)}, {"w2", ix.id(w2)}, {"r1", ix.id(r1)}}};
      }
    }
  }
  return std::nullopt;
}

std::optional<BadPattern> scan_write_hb_init_read(const HistoryIndex& ix, uint32_t o,
                                                  const BitRel& hb) {
  for (uint32_t r = 0; r < ix.size(); ++r) {
    if (!ix.is_read(r) || ix.value(r) != 0) continue;
    if (r != o && !ix.po_before(r, o)) continue;
    for (uint32_t w = 0; w < ix.size(); ++w) {
      if (!ix.is_write(w) || ix.var(w) != ix.var(r)) continue;
      if (hb.at(w, r))
        return BadPattern{PatternKind::WriteHBInitRead,
                          {{"w", ix.id(w)}, {"r", ix.id(r)}, {"o", ix.id(o)}}};
    }
  }
  return std::nullopt;
}

std::optional<BadPattern> scan_cyclic_hb(const HistoryIndex& ix, uint32_t o, const BitRel& hb) {
  if (!hb.has_reflexive_pair()) return std::nullopt;
  BitRel edges = hb;
  for (uint32_t i = 0; i < edges.size(); ++i) edges.clear(i, i);
  auto cycle = find_cycle(edges);
  BadPattern p{PatternKind::CyclicHB, {{"o", ix.id(o)}}};
  if (cycle) {
    for (uint32_t i : *cycle) p.witness.emplace_back("cycle", ix.id(i));
  } else {
    // Pure self-loop in hb (possible only through the seeding relation).
    for (uint32_t i = 0; i < hb.size(); ++i)
      if (hb.at(i, i)) { p.witness.emplace_back("cycle", ix.id(i)); break; }
  }
  return p;
}

std::optional<BadPattern> scan_cyclic_cf(const HistoryIndex& ix, const BitRel& cf,
                                         const BitRel& co) {
  BitRel combined = cf | co;
  BitRel closed = combined;
  closed.transitive_close();
  if (!closed.has_reflexive_pair()) return std::nullopt;
  auto cycle = find_cycle(combined);
  BadPattern p{PatternKind::CyclicCF, {}};
  if (cycle) p.witness = cycle_witness(ix, *cycle);
  return p;
}

}  // namespace

PatternReport detect_patterns(const History& h, const DetectOptions& opts) {
  if (!is_differentiated(h))
    throw std::invalid_argument("detect_patterns requires a differentiated history");
  HistoryIndex ix(h);
  RelationSet rs = compute_relations(ix, opts.relations);

  PatternReport report;
  if (rs.co.cycle) {
    report.found.push_back(
        BadPattern{PatternKind::CyclicCO, cycle_witness(ix, *rs.co.cycle)});
    if (auto p = scan_thin_air(ix)) report.found.push_back(std::move(*p));
    report.not_evaluated = {PatternKind::WriteCOInitRead, PatternKind::WriteCORead,
                            PatternKind::WriteHBInitRead, PatternKind::CyclicHB,
                            PatternKind::CyclicCF};
    return report;
  }

  if (auto p = scan_write_co_init_read(ix, rs.co.co)) report.found.push_back(std::move(*p));
  if (auto p = scan_thin_air(ix)) report.found.push_back(std::move(*p));
  if (auto p = scan_write_co_read(ix, rs.rf, rs.co.co)) report.found.push_back(std::move(*p));
  for (const auto& [o, hb] : rs.hb) {
    if (auto p = scan_write_hb_init_read(ix, o, hb)) {
      report.found.push_back(std::move(*p));
      break;
    }
  }
  for (const auto& [o, hb] : rs.hb) {
    if (auto p = scan_cyclic_hb(ix, o, hb)) {
      report.found.push_back(std::move(*p));
      break;
    }
  }
  if (auto p = scan_cyclic_cf(ix, rs.cf, rs.co.co)) report.found.push_back(std::move(*p));

  // Fixed kind order regardless of scan order above.
  std::stable_sort(report.found.begin(), report.found.end(),
                   [](const BadPattern& a, const BadPattern& b) { return a.kind < b.kind; });
  return report;
}

namespace {

const std::initializer_list<PatternKind> kCcKinds = {
    PatternKind::CyclicCO, PatternKind::WriteCOInitRead, PatternKind::ThinAirRead,
    PatternKind::WriteCORead};
const std::initializer_list<PatternKind> kCmExtra = {PatternKind::WriteHBInitRead,
                                                     PatternKind::CyclicHB};
const std::initializer_list<PatternKind> kCcvExtra = {PatternKind::CyclicCF};

Verdict from_patterns(Criterion crit, const PatternReport& report) {
  Verdict v;
  v.criterion = crit;
  v.used = CheckMode::FastPath;
  std::vector<PatternKind> kinds(kCcKinds);
  if (crit == Criterion::CM) kinds.insert(kinds.end(), kCmExtra);
  if (crit == Criterion::CCv) kinds.insert(kinds.end(), kCcvExtra);
  std::sort(kinds.begin(), kinds.end());
  const BadPattern* first = nullptr;
  for (const auto& p : report.found) {
    if (std::find(kinds.begin(), kinds.end(), p.kind) != kinds.end()) {
      first = &p;
      break;
    }
  }
  if (first) {
    v.consistent = false;
    v.pattern = *first;
  }
  return v;
}

Verdict from_oracle(Criterion crit, const History& h, const CheckOptions& opts) {
  Verdict v;
  v.criterion = crit;
  v.used = CheckMode::Oracle;
  OracleResult r = oracle_check(h, crit, opts.oracle);
  v.consistent = r.consistent;
  v.orders = std::move(r.witness);
  return v;
}

CheckMode resolve_mode(const History& h, const CheckOptions& opts) {
  switch (opts.mode) {
    case CheckMode::Auto:
      return is_differentiated(h) ? CheckMode::FastPath : CheckMode::Oracle;
    case CheckMode::FastPath:
      if (!is_differentiated(h))
        throw std::invalid_argument("fast path requires a differentiated history");
      return CheckMode::FastPath;
    case CheckMode::Oracle:
      return CheckMode::Oracle;
  }
  return CheckMode::FastPath;
}

Verdict check_one(const History& h, Criterion crit, const CheckOptions& opts) {
  if (resolve_mode(h, opts) == CheckMode::Oracle) return from_oracle(crit, h, opts);
  return from_patterns(crit, detect_patterns(h, opts.detect));
}

}  // namespace

Verdict check_cc(const History& h, const CheckOptions& opts) {
  return check_one(h, Criterion::CC, opts);
}
Verdict check_cm(const History& h, const CheckOptions& opts) {
  return check_one(h, Criterion::CM, opts);
}
Verdict check_ccv(const History& h, const CheckOptions& opts) {
  return check_one(h, Criterion::CCv, opts);
}

std::map<Criterion, Verdict> check_all(const History& h, const CheckOptions& opts) {
  std::map<Criterion, Verdict> out;
  if (resolve_mode(h, opts) == CheckMode::Oracle) {
    for (Criterion c : {Criterion::CC, Criterion::CM, Criterion::CCv})
      out.emplace(c, from_oracle(c, h, opts));
    return out;
  }
  PatternReport report = detect_patterns(h, opts.detect);
  for (Criterion c : {Criterion::CC, Criterion::CM, Criterion::CCv})
    out.emplace(c, from_patterns(c, report));
  return out;
}

bool validate_pattern(const History& h, const BadPattern& p) {
  HistoryIndex ix(h);
  auto index_of = [&](const OpId& id) -> std::optional<uint32_t> {
    for (uint32_t i = 0; i < ix.size(); ++i)
      if (ix.id(i) == id) return i;
    return std::nullopt;
  };
  auto role = [&](const char* name) -> std::optional<uint32_t> {
    for (const auto& [r, id] : p.witness)
      if (r == name) return index_of(id);
    return std::nullopt;
  };
  auto cycle_members = [&]() {
    std::vector<uint32_t> c;
    for (const auto& [r, id] : p.witness)
      if (r == "cycle") {
        auto i = index_of(id);
        if (!i) return std::vector<uint32_t>{};
        c.push_back(*i);
      }
    return c;
  };

  BitRel rf = compute_rf(ix);
  CoResult co = compute_co(ix, rf);

  switch (p.kind) {
    case PatternKind::CyclicCO: {
      auto c = cycle_members();
      if (c.empty()) return false;
      BitRel edges = ix.po_edges() | rf;
      BitRel po = ix.po();
      for (size_t k = 0; k < c.size(); ++k) {
        uint32_t a = c[k], b = c[(k + 1) % c.size()];
        if (!edges.at(a, b) && !po.at(a, b) && !rf.at(a, b)) return false;
      }
      return true;
    }
    case PatternKind::ThinAirRead: {
      auto r = role("r");
      if (!r || !ix.is_read(*r) || ix.value(*r) == 0) return false;
      const auto* ws = ix.writers_of(ix.var(*r), ix.value(*r));
      return !ws || ws->empty();
    }
    case PatternKind::WriteCOInitRead: {
      auto w = role("w"), r = role("r");
      if (!w || !r || co.cycle) return false;
      return ix.is_write(*w) && ix.is_read(*r) && ix.value(*r) == 0 &&
             ix.var(*w) == ix.var(*r) && co.co.at(*w, *r);
    }
    case PatternKind::WriteCORead: {
      auto w1 = role("w1"), w2 = role("w2"), r1 = role("r1");
      if (!w1 || !w2 || !r1 || co.cycle) return false;
      return ix.is_write(*w1) && ix.is_write(*w2) && ix.var(*w1) == ix.var(*w2) &&
             rf.at(*w1, *r1) && co.co.at(*w1, *w2) && co.co.at(*w2, *r1);
    }
    case PatternKind::WriteHBInitRead: {
      auto w = role("w"), r = role("r"), o = role("o");
      if (!w || !r || !o || co.cycle) return false;
      if (!(*r == *o || ix.po_before(*r, *o))) return false;
      BitRel hb = compute_hb(ix, rf, co.co, *o);
      return ix.is_write(*w) && ix.is_read(*r) && ix.value(*r) == 0 &&
             ix.var(*w) == ix.var(*r) && hb.at(*w, *r);
    }
    case PatternKind::CyclicHB: {
      auto o = role("o");
      auto c = cycle_members();
      if (!o || c.empty() || co.cycle) return false;
      BitRel hb = compute_hb(ix, rf, co.co, *o);
      for (size_t k = 0; k < c.size(); ++k)
        if (!hb.at(c[k], c[(k + 1) % c.size()])) return false;
      return true;
    }
    case PatternKind::CyclicCF: {
      auto c = cycle_members();
      if (c.empty() || co.cycle) return false;
      BitRel cf = compute_cf(ix, rf, co.co);
      for (size_t k = 0; k < c.size(); ++k) {
        uint32_t a = c[k], b = c[(k + 1) % c.size()];
        if (!cf.at(a, b) && !co.co.at(a, b)) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace ccheck
