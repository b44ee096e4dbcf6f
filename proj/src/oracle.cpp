#include "ccheck/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ccheck {

std::string to_string(Criterion c) {
  switch (c) {
    case Criterion::CC: return "cc";
    case Criterion::CM: return "cm";
    case Criterion::CCv: return "ccv";
  }
  return "?";
}

bool spec_member(const SpecSequence& s) {
  std::map<std::string, uint64_t> current;  // default 0 for absent keys
  for (const auto& item : s.items) {
    if (item.method == Method::Write) {
      current[item.variable] = item.value;
      continue;
    }
    if (!item.ret) throw std::invalid_argument("spec_member needs return values on reads");
    auto it = current.find(item.variable);
    uint64_t visible = it == current.end() ? 0 : it->second;
    if (*item.ret != visible) return false;
  }
  return true;
}

LabeledPoset hide_return_values(const LabeledPoset& p, std::span<const uint32_t> keep) {
  LabeledPoset out = p;
  std::vector<bool> kept(out.nodes.size(), false);
  for (uint32_t k : keep) kept.at(k) = true;
  for (size_t i = 0; i < out.nodes.size(); ++i)
    if (out.nodes[i].method == Method::Read && !kept[i]) out.nodes[i].ret_visible = false;
  return out;
}

bool poset_refines(const LabeledPoset& p, const SpecSequence& s, std::span<const uint32_t> order) {
  const size_t n = p.nodes.size();
  if (s.items.size() != n || order.size() != n) return false;
  std::vector<size_t> pos(n, n);
  for (size_t k = 0; k < n; ++k) {
    if (order[k] >= n || pos[order[k]] != n) return false;
    pos[order[k]] = k;
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (p.order.at(i, j) && pos[i] >= pos[j]) return false;
  for (size_t k = 0; k < n; ++k) {
    const auto& node = p.nodes[order[k]];
    const auto& item = s.items[k];
    if (item.method != node.method || item.variable != node.variable) return false;
    if (node.method == Method::Write) {
      if (item.value != node.value) return false;
    } else {
      if (!item.ret) return false;
      if (node.ret_visible && *item.ret != node.value) return false;
    }
  }
  return true;
}

namespace {

// Shared scaffolding for the exhaustive search. Operation indexing follows
// HistoryIndex ((site, seq) ascending); all iteration is in ascending index
// order so verdicts and witnesses are deterministic.
struct Search {
  explicit Search(const History& h) : ix(h), po_edge(ix.po_edges()), po_full(ix.po()) {
    for (uint32_t i = 0; i < ix.size(); ++i)
      if (ix.is_read(i)) reads.push_back(i);
  }

  HistoryIndex ix;
  BitRel po_edge;
  BitRel po_full;
  std::vector<uint32_t> reads;

  size_t n() const { return ix.size(); }

  uint64_t bit(uint32_t i) const { return uint64_t{1} << i; }

  // Candidate writers per read: for a nonzero return the writes with the
  // same (variable, value); for a return of 0 the "no writer" option (-1)
  // followed by any writes of 0 (non-differentiated histories only).
  // Returns false when some read of a nonzero value has no writer at all;
  // no criterion can hold then.
  bool build_candidates(std::vector<std::vector<int64_t>>* out) const {
    out->clear();
    for (uint32_t r : reads) {
      std::vector<int64_t> c;
      const auto* ws = ix.writers_of(ix.var(r), ix.value(r));
      if (ix.value(r) == 0) {
        c.push_back(-1);
        if (ws)
          for (uint32_t w : *ws) c.push_back(w);
      } else {
        if (!ws || ws->empty()) return false;
        for (uint32_t w : *ws) c.push_back(w);
      }
      out->push_back(std::move(c));
    }
    return true;
  }

  BitRel base_for(const std::vector<std::vector<int64_t>>& cands,
                  const std::vector<size_t>& pick, std::vector<int64_t>* writer_of) const {
    BitRel edges = po_edge;
    writer_of->assign(n(), -1);
    for (size_t k = 0; k < reads.size(); ++k) {
      int64_t w = cands[k][pick[k]];
      if (w >= 0) {
        edges.set(static_cast<uint32_t>(w), reads[k]);
        (*writer_of)[reads[k]] = w;
      }
    }
    edges.transitive_close();
    return edges;
  }

  std::vector<uint32_t> past_of(const BitRel& rel, uint32_t o) const {
    std::vector<uint32_t> past;
    for (uint32_t i = 0; i < n(); ++i)
      if (i == o || rel.at(i, o)) past.push_back(i);
    return past;
  }

  // Store run check for one read under a fixed partial order: can a
  // linearization of the causal past of o end with o returning its value?
  // True iff either o reads 0 and no write to its variable is in the past,
  // or some matching write w* has no differently-valued write to the same
  // variable ordered after it. Returns the usable w* (or -1 for the
  // empty-past case).
  std::optional<int64_t> read_ok(const BitRel& rel, uint32_t o) const {
    std::vector<uint32_t> writes_here;
    for (uint32_t w = 0; w < n(); ++w)
      if (ix.is_write(w) && ix.var(w) == ix.var(o) && rel.at(w, o)) writes_here.push_back(w);
    if (ix.value(o) == 0 && writes_here.empty()) return -1;
    for (uint32_t w : writes_here) {
      if (ix.value(w) != ix.value(o)) continue;
      bool clean = true;
      for (uint32_t w2 : writes_here)
        if (ix.value(w2) != ix.value(o) && rel.at(w, w2)) { clean = false; break; }
      if (clean) return static_cast<int64_t>(w);
    }
    return std::nullopt;
  }

  // Ascending-index topological sort of `members` under rel, with `late`
  // (when >= 0) forced after everything not ordered after it.
  std::vector<uint32_t> linearize(const BitRel& rel, const std::vector<uint32_t>& members,
                                  int64_t late = -1) const {
    std::vector<uint32_t> out;
    std::vector<bool> placed(n(), false);
    auto ready = [&](uint32_t i) {
      for (uint32_t j : members)
        if (!placed[j] && j != i && rel.at(j, i)) return false;
      return true;
    };
    while (out.size() < members.size()) {
      uint32_t chosen = UINT32_MAX;
      for (uint32_t i : members) {
        if (placed[i] || !ready(i)) continue;
        if (late >= 0 && i == static_cast<uint32_t>(late)) continue;
        chosen = i;
        break;
      }
      if (chosen == UINT32_MAX) {
        // Only the deferred element remains placeable.
        for (uint32_t i : members)
          if (!placed[i] && ready(i)) { chosen = i; break; }
      }
      if (chosen == UINT32_MAX) throw std::logic_error("linearize: cyclic input");
      placed[chosen] = true;
      out.push_back(chosen);
    }
    return out;
  }

  // Fills every read's return by replaying the sequence.
  SpecSequence replay(const std::vector<uint32_t>& order) const {
    SpecSequence s;
    std::map<int, uint64_t> current;
    for (uint32_t i : order) {
      SpecSequence::Item item;
      item.method = ix.ops[i].method;
      item.variable = ix.ops[i].variable;
      if (ix.is_write(i)) {
        item.value = ix.value(i);
        current[ix.var(i)] = ix.value(i);
      } else {
        auto it = current.find(ix.var(i));
        item.ret = it == current.end() ? 0 : it->second;
      }
      s.items.push_back(std::move(item));
    }
    return s;
  }

  // Linearization of past(o) placing o last and, for reads, every
  // differently-valued write to o's variable before the chosen writer w*.
  // Preconditions established by read_ok.
  std::vector<uint32_t> run_for(const BitRel& rel, uint32_t o, int64_t wstar) const {
    std::vector<uint32_t> past = past_of(rel, o);
    std::vector<uint32_t> head, tail;
    if (wstar < 0) {
      for (uint32_t i : past)
        if (i != o) head.push_back(i);
    } else {
      uint32_t w = static_cast<uint32_t>(wstar);
      for (uint32_t i : past) {
        if (i == o) continue;
        if (i == w || rel.at(w, i)) tail.push_back(i);
        else head.push_back(i);
      }
    }
    std::vector<uint32_t> order = linearize(rel, head);
    std::vector<uint32_t> rest = linearize(rel, tail);
    order.insert(order.end(), rest.begin(), rest.end());
    order.push_back(o);
    return order;
  }

  // Backtracking search for one store run of past(o) in which every read in
  // `required` returns its recorded value. Ascending choice order; failed
  // (placed set, store state) pairs are memoized exactly.
  bool feasible_run(const BitRel& rel, uint32_t o, uint64_t required_mask,
                    std::vector<uint32_t>* out) const {
    std::vector<uint32_t> past = past_of(rel, o);
    uint64_t full = 0;
    for (uint32_t i : past) full |= bit(i);
    std::vector<uint64_t> store(ix.var_names.size(), 0);
    std::set<std::pair<uint64_t, std::vector<uint64_t>>> failed;
    std::vector<uint32_t> seq;
    auto go = [&](auto&& self, uint64_t placed, std::vector<uint64_t>& cur) -> bool {
      if (placed == full) return true;
      if (failed.count({placed, cur})) return false;
      for (uint32_t i : past) {
        if (placed & bit(i)) continue;
        bool ready = true;
        for (uint32_t j : past)
          if (!(placed & bit(j)) && j != i && rel.at(j, i)) { ready = false; break; }
        if (!ready) continue;
        if (ix.is_read(i) && (required_mask & bit(i)) && cur[ix.var(i)] != ix.value(i)) continue;
        uint64_t saved = cur[ix.var(i)];
        if (ix.is_write(i)) cur[ix.var(i)] = ix.value(i);
        seq.push_back(i);
        if (self(self, placed | bit(i), cur)) return true;
        seq.pop_back();
        cur[ix.var(i)] = saved;
      }
      failed.insert({placed, cur});
      return false;
    };
    if (!go(go, 0, store)) return false;
    *out = seq;
    return true;
  }
};

// Enumerates transitively closed irreflexive supersets of `start`,
// one decision per ordered pair (exclude branch first). visit returning
// true stops the walk. Guarded by a step budget; histories small enough
// for the oracle keep this tiny in practice.
class PosetEnum {
 public:
  PosetEnum(BitRel start, size_t budget) : budget_(budget), start_(std::move(start)) {}

  bool enumerate(const std::function<bool(const BitRel&)>& visit) {
    BitRel forbidden(start_.size());
    return walk(start_, forbidden, 0, visit);
  }

 private:
  bool walk(const BitRel& rel, BitRel forbidden, size_t from,
            const std::function<bool(const BitRel&)>& visit) {
    const size_t n = rel.size();
    size_t p = from;
    for (; p < n * n; ++p) {
      size_t i = p / n, j = p % n;
      if (i != j && !rel.at(i, j) && !forbidden.at(i, j)) break;
    }
    if (p == n * n) {
      if (++emitted_ > budget_)
        throw std::runtime_error("oracle search budget exceeded; raise the op cap guard");
      return visit(rel);
    }
    size_t i = p / n, j = p % n;
    forbidden.set(i, j);
    if (walk(rel, forbidden, p + 1, visit)) return true;
    forbidden.clear(i, j);

    BitRel grown = rel;
    grown.set(i, j);
    grown.transitive_close();
    if (!grown.has_reflexive_pair()) {
      bool clash = false;
      for (size_t q = 0; q < n * n && !clash; ++q)
        if (forbidden.at(q / n, q % n) && grown.at(q / n, q % n)) clash = true;
      if (!clash) return walk(grown, forbidden, p + 1, visit);
    }
    return false;
  }

  size_t budget_;
  size_t emitted_ = 0;
  BitRel start_;
};

// Odometer over per-read candidate picks.
bool next_pick(const std::vector<std::vector<int64_t>>& cands, std::vector<size_t>* pick) {
  for (size_t k = 0; k < pick->size(); ++k) {
    if (++(*pick)[k] < cands[k].size()) return true;
    (*pick)[k] = 0;
  }
  return false;
}

std::optional<WitnessOrders> check_cc_base(const Search& s, const BitRel& base) {
  for (uint32_t r : s.reads)
    if (!s.read_ok(base, r)) return std::nullopt;
  WitnessOrders w;
  w.co = base;
  for (uint32_t o = 0; o < s.n(); ++o) {
    int64_t wstar = -1;
    if (s.ix.is_read(o)) wstar = *s.read_ok(base, o);
    WitnessOrders::PerOp po;
    po.op_order = s.run_for(base, o, wstar);
    po.seq = s.replay(po.op_order);
    w.per_op.emplace(o, std::move(po));
  }
  return w;
}

std::optional<WitnessOrders> check_ccv_base(const Search& s, const BitRel& base) {
  // Per read: the writes to its variable in its past, and the subset the
  // arbitration may put last (same value as the read).
  std::vector<std::vector<uint32_t>> wo(s.reads.size()), go(s.reads.size());
  for (size_t k = 0; k < s.reads.size(); ++k) {
    uint32_t r = s.reads[k];
    for (uint32_t w = 0; w < s.n(); ++w)
      if (s.ix.is_write(w) && s.ix.var(w) == s.ix.var(r) && base.at(w, r)) wo[k].push_back(w);
    for (uint32_t w : wo[k])
      if (s.ix.value(w) == s.ix.value(r)) go[k].push_back(w);
    if (go[k].empty() && !(s.ix.value(r) == 0 && wo[k].empty())) return std::nullopt;
  }
  std::vector<std::vector<int64_t>> choice(s.reads.size());
  for (size_t k = 0; k < s.reads.size(); ++k) {
    if (wo[k].empty()) choice[k] = {-1};
    else for (uint32_t w : go[k]) choice[k].push_back(w);
  }
  std::vector<size_t> pick(choice.size(), 0);
  do {
    BitRel ext = base;
    for (size_t k = 0; k < s.reads.size(); ++k) {
      int64_t w = choice[k][pick[k]];
      if (w < 0) continue;
      for (uint32_t other : wo[k])
        if (s.ix.value(other) != s.ix.value(s.reads[k]))
          ext.set(other, static_cast<uint32_t>(w));
    }
    ext.transitive_close();
    if (ext.has_reflexive_pair()) continue;

    WitnessOrders w;
    w.co = base;
    std::vector<uint32_t> everything(s.n());
    for (uint32_t i = 0; i < s.n(); ++i) everything[i] = i;
    w.arb = s.linearize(ext, everything);
    BitRel arb_rel(s.n());
    for (size_t a = 0; a < w.arb->size(); ++a)
      for (size_t b = a + 1; b < w.arb->size(); ++b) arb_rel.set((*w.arb)[a], (*w.arb)[b]);
    for (uint32_t o = 0; o < s.n(); ++o) {
      WitnessOrders::PerOp po;
      std::vector<uint32_t> past = s.past_of(base, o);
      po.op_order = s.linearize(arb_rel, past);
      po.seq = s.replay(po.op_order);
      w.per_op.emplace(o, std::move(po));
    }
    return w;
  } while (next_pick(choice, &pick));
  return std::nullopt;
}

std::optional<WitnessOrders> check_cm_base(const Search& s, const BitRel& base) {
  WitnessOrders w;
  w.co = base;
  for (uint32_t o = 0; o < s.n(); ++o) {
    uint64_t required = 0;
    for (uint32_t r : s.reads)
      if (r == o || s.po_full.at(r, o)) required |= s.bit(r);
    WitnessOrders::PerOp po;
    if (!s.feasible_run(base, o, required, &po.op_order)) return std::nullopt;
    po.seq = s.replay(po.op_order);
    w.per_op.emplace(o, std::move(po));
  }
  return w;
}

}  // namespace

OracleResult oracle_check(const History& h, Criterion crit, const OracleOptions& opts) {
  Search s(h);
  size_t cap = std::min<size_t>(opts.op_cap, 64);
  if (s.n() > cap) throw OracleCapExceeded(s.n(), cap);

  std::vector<std::vector<int64_t>> cands;
  if (!s.build_candidates(&cands)) return {false, std::nullopt};

  // Pass 1: bases induced by a writer assignment. Complete for CC and CCv;
  // a fast accept for CM.
  std::vector<size_t> pick(cands.size(), 0);
  std::optional<WitnessOrders> cc_witness;
  do {
    std::vector<int64_t> writer_of;
    BitRel base = s.base_for(cands, pick, &writer_of);
    if (base.has_reflexive_pair()) continue;
    std::optional<WitnessOrders> w;
    switch (crit) {
      case Criterion::CC: w = check_cc_base(s, base); break;
      case Criterion::CCv: w = check_ccv_base(s, base); break;
      case Criterion::CM:
        if (!cc_witness) cc_witness = check_cc_base(s, base);
        w = check_cm_base(s, base);
        break;
    }
    if (w) return {true, std::move(w)};
  } while (next_pick(cands, &pick));

  if (crit != Criterion::CM) return {false, std::nullopt};
  // Pass 1 evaluated CC on every acyclic base. CM implies CC (the CC
  // witness is the CM witness with more hiding), so no CC base means no CM.
  if (!cc_witness) return {false, std::nullopt};

  // Pass 2 (CM): exhaustive walk over all causal orders. Writer-forced
  // edges (reads of a nonzero value with a unique candidate) are part of
  // every causal order, which keeps the walk small.
  BitRel start = s.po_edge;
  for (size_t k = 0; k < s.reads.size(); ++k) {
    if (s.ix.value(s.reads[k]) == 0) continue;
    if (cands[k].size() == 1) start.set(static_cast<uint32_t>(cands[k][0]), s.reads[k]);
  }
  start.transitive_close();
  if (start.has_reflexive_pair()) return {false, std::nullopt};

  std::optional<WitnessOrders> found;
  PosetEnum walker(start, 20'000'000);
  walker.enumerate([&](const BitRel& rel) {
    if (auto w = check_cm_base(s, rel)) {
      found = std::move(w);
      return true;
    }
    return false;
  });
  return {found.has_value(), std::move(found)};
}

bool validate_witness(const History& h, Criterion crit, const WitnessOrders& w) {
  HistoryIndex ix(h);
  const size_t n = ix.size();
  if (w.co.size() != n) return false;

  BitRel closed = w.co;
  closed.transitive_close();
  if (!(closed == w.co) || w.co.has_reflexive_pair()) return false;
  if (!ix.po().subset_of(w.co)) return false;

  BitRel arb_rel(n);
  if (crit == Criterion::CCv) {
    if (!w.arb || w.arb->size() != n) return false;
    std::vector<bool> seen(n, false);
    for (uint32_t i : *w.arb) {
      if (i >= n || seen[i]) return false;
      seen[i] = true;
    }
    for (size_t a = 0; a < n; ++a)
      for (size_t b = a + 1; b < n; ++b) arb_rel.set((*w.arb)[a], (*w.arb)[b]);
    if (!w.co.subset_of(arb_rel)) return false;
  }

  BitRel po = ix.po();
  for (uint32_t o = 0; o < n; ++o) {
    auto it = w.per_op.find(o);
    if (it == w.per_op.end()) return false;
    const auto& per = it->second;

    std::vector<uint32_t> past;
    for (uint32_t i = 0; i < n; ++i)
      if (i == o || w.co.at(i, o)) past.push_back(i);
    if (per.op_order.size() != past.size()) return false;
    std::vector<uint32_t> sorted = per.op_order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != past) return false;

    std::vector<uint32_t> node_of(n, UINT32_MAX);
    for (uint32_t k = 0; k < past.size(); ++k) node_of[past[k]] = k;

    LabeledPoset p;
    p.order = BitRel(past.size());
    for (uint32_t a : past) {
      LabeledPoset::Node nd;
      nd.method = ix.ops[a].method;
      nd.variable = ix.ops[a].variable;
      nd.value = ix.value(a);
      p.nodes.push_back(std::move(nd));
      const BitRel& rel = crit == Criterion::CCv ? arb_rel : w.co;
      for (uint32_t b : past)
        if (rel.at(a, b)) p.order.set(node_of[a], node_of[b]);
    }

    std::vector<uint32_t> keep;
    if (crit == Criterion::CM) {
      for (uint32_t a : past)
        if (a == o || po.at(a, o)) keep.push_back(node_of[a]);
    } else {
      keep.push_back(node_of[o]);
    }
    LabeledPoset hidden = hide_return_values(p, keep);

    std::vector<uint32_t> order;
    for (uint32_t opi : per.op_order) order.push_back(node_of[opi]);

    if (!spec_member(per.seq)) return false;
    if (!poset_refines(hidden, per.seq, order)) return false;
  }
  return true;
}

Cnf parse_dimacs(std::istream& in) {
  Cnf cnf;
  bool have_header = false;
  size_t declared_clauses = 0;
  std::vector<int32_t> clause;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "p") {
      std::string kind;
      long long v = -1, c = -1;
      if (!(ls >> kind >> v >> c) || kind != "cnf" || v < 0 || c < 0)
        throw ParseError(lineno, "bad DIMACS header");
      if (have_header) throw ParseError(lineno, "duplicate DIMACS header");
      have_header = true;
      cnf.num_vars = static_cast<uint32_t>(v);
      declared_clauses = static_cast<size_t>(c);
      continue;
    }
    if (!have_header) throw ParseError(lineno, "clause before DIMACS header");
    ls.clear();
    ls.str(line);
    long long lit;
    while (ls >> lit) {
      if (lit == 0) {
        cnf.clauses.push_back(clause);
        clause.clear();
      } else {
        if (std::llabs(lit) > cnf.num_vars)
          throw ParseError(lineno, "literal " + std::to_string(lit) + " out of range");
        clause.push_back(static_cast<int32_t>(lit));
      }
    }
    if (!ls.eof()) throw ParseError(lineno, "bad literal token");
  }
  if (!have_header) throw ParseError(lineno ? lineno : 1, "missing DIMACS header");
  if (!clause.empty()) throw ParseError(lineno, "unterminated clause (missing 0)");
  if (cnf.clauses.size() != declared_clauses)
    throw ParseError(lineno ? lineno : 1, "clause count does not match header");
  return cnf;
}

History encode_sat(const Cnf& cnf) {
  if (cnf.clauses.empty()) throw std::invalid_argument("encode_sat: empty clause list");
  for (const auto& cl : cnf.clauses)
    for (int32_t lit : cl)
      if (lit == 0 || static_cast<uint32_t>(std::abs(lit)) > cnf.num_vars)
        throw std::invalid_argument("encode_sat: literal out of range");

  const uint32_t n = cnf.num_vars;
  const std::string y = "y";
  History h;
  auto add = [&](uint32_t site, Method m, uint64_t value) {
    uint32_t seq = 0;
    for (const Operation& op : h.ops)
      if (op.id.site == site) ++seq;
    h.ops.push_back(Operation{OpId{site, seq}, m, y, value});
  };

  for (uint32_t i = 1; i <= n; ++i) {
    uint32_t site_true = 2 * (i - 1);
    uint32_t site_false = 2 * (i - 1) + 1;
    for (size_t j = 0; j < cnf.clauses.size(); ++j) {
      bool pos = false, neg = false;
      for (int32_t lit : cnf.clauses[j]) {
        if (lit == static_cast<int32_t>(i)) pos = true;
        if (lit == -static_cast<int32_t>(i)) neg = true;
      }
      if (pos) add(site_true, Method::Write, n + j + 1);
      if (neg) add(site_false, Method::Write, n + j + 1);
    }
    add(site_true, Method::Write, i);
    add(site_false, Method::Write, i);
  }
  uint32_t site_eval = 2 * n;
  for (uint32_t i = 1; i <= n; ++i) add(site_eval, Method::Read, i);
  for (size_t j = 0; j < cnf.clauses.size(); ++j) add(site_eval, Method::Read, n + j + 1);

  std::sort(h.ops.begin(), h.ops.end(),
            [](const Operation& a, const Operation& b) { return a.id < b.id; });
  return h;
}

Execution to_execution_site_major(const History& h) {
  Execution e;
  e.events = h.ops;
  std::sort(e.events.begin(), e.events.end(),
            [](const Operation& a, const Operation& b) { return a.id < b.id; });
  return e;
}

bool brute_force_sat(const Cnf& cnf) {
  if (cnf.num_vars > 24) throw std::invalid_argument("brute_force_sat: too many variables");
  for (uint64_t as = 0; as < (uint64_t{1} << cnf.num_vars); ++as) {
    bool all = true;
    for (const auto& cl : cnf.clauses) {
      bool sat = false;
      for (int32_t lit : cl) {
        uint32_t v = static_cast<uint32_t>(std::abs(lit)) - 1;
        bool val = (as >> v) & 1;
        if (lit > 0 ? val : !val) { sat = true; break; }
      }
      if (!sat) { all = false; break; }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace ccheck
