#include "ccheck/relations.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccheck {

std::optional<std::vector<uint32_t>> find_cycle(const BitRel& edges) {
  const size_t n = edges.size();
  enum : uint8_t { White, Grey, Black };
  std::vector<uint8_t> color(n, White);
  std::vector<uint32_t> stack;
  std::vector<uint32_t> next(n, 0);

  for (uint32_t root = 0; root < n; ++root) {
    if (color[root] != White) continue;
    stack.push_back(root);
    color[root] = Grey;
    next[root] = 0;
    while (!stack.empty()) {
      uint32_t u = stack.back();
      uint32_t j = next[u];
      for (; j < n; ++j) {
        if (!edges.at(u, j)) continue;
        if (color[j] == Grey) {
          // Cycle: slice the grey stack from j's position.
          auto it = std::find(stack.begin(), stack.end(), j);
          next[u] = j + 1;
          return std::vector<uint32_t>(it, stack.end());
        }
        if (color[j] == White) break;
      }
      next[u] = j + 1;
      if (j < n) {
        color[j] = Grey;
        stack.push_back(j);
        next[j] = 0;
      } else {
        color[u] = Black;
        stack.pop_back();
      }
    }
  }
  return std::nullopt;
}

HistoryIndex::HistoryIndex(const History& h) {
  ops = h.ops;
  std::sort(ops.begin(), ops.end(),
            [](const Operation& a, const Operation& b) { return a.id < b.id; });
  for (size_t i = 1; i < ops.size(); ++i) {
    if (ops[i].id == ops[i - 1].id)
      throw std::invalid_argument("history has duplicate operation id " + to_string(ops[i].id));
  }

  std::map<std::string, int> interned;
  var_ids.reserve(ops.size());
  std::map<uint32_t, uint32_t> expected_seq;
  for (uint32_t i = 0; i < ops.size(); ++i) {
    const Operation& op = ops[i];
    auto [it, fresh] = interned.emplace(op.variable, static_cast<int>(var_names.size()));
    if (fresh) var_names.push_back(op.variable);
    var_ids.push_back(it->second);

    uint32_t expect = expected_seq.count(op.id.site) ? expected_seq[op.id.site] : 0;
    if (op.id.seq != expect)
      throw std::invalid_argument("site " + std::to_string(op.id.site) + " has seq gap at " +
                                  to_string(op.id));
    expected_seq[op.id.site] = expect + 1;

    if (op.method == Method::Write) writers_[{it->second, op.value}].push_back(i);
  }

  std::map<uint32_t, uint32_t> site_ids;
  for (const Operation& op : ops) site_ids.emplace(op.id.site, 0);
  num_sites = site_ids.size();
  by_site.resize(num_sites);
  size_t next_site = 0;
  for (auto& [site, local] : site_ids) local = next_site++;
  for (uint32_t i = 0; i < ops.size(); ++i) by_site[site_ids[ops[i].id.site]].push_back(i);
}

const std::vector<uint32_t>* HistoryIndex::writers_of(int var, uint64_t value) const {
  auto it = writers_.find({var, value});
  return it == writers_.end() ? nullptr : &it->second;
}

BitRel HistoryIndex::po_edges() const {
  BitRel r(size());
  for (const auto& chain : by_site)
    for (size_t k = 1; k < chain.size(); ++k) r.set(chain[k - 1], chain[k]);
  return r;
}

BitRel HistoryIndex::po() const {
  BitRel r(size());
  for (const auto& chain : by_site)
    for (size_t a = 0; a < chain.size(); ++a)
      for (size_t b = a + 1; b < chain.size(); ++b) r.set(chain[a], chain[b]);
  return r;
}

BitRel compute_rf(const HistoryIndex& ix) {
  for (uint32_t i = 0; i < ix.size(); ++i) {
    if (!ix.is_write(i)) continue;
    if (ix.value(i) == 0) throw std::invalid_argument("rf requires a differentiated history");
    const auto* dup = ix.writers_of(ix.var(i), ix.value(i));
    if (dup && dup->size() > 1)
      throw std::invalid_argument("rf requires a differentiated history");
  }
  BitRel rf(ix.size());
  for (uint32_t r = 0; r < ix.size(); ++r) {
    if (!ix.is_read(r) || ix.value(r) == 0) continue;
    if (const auto* ws = ix.writers_of(ix.var(r), ix.value(r)))
      rf.set((*ws)[0], r);
  }
  return rf;
}

CoResult compute_co(const HistoryIndex& ix, const BitRel& rf) {
  BitRel edges = ix.po_edges() | rf;
  CoResult out;
  out.co = edges;
  out.co.transitive_close();
  if (out.co.has_reflexive_pair()) out.cycle = find_cycle(edges);
  return out;
}

BitRel compute_cf(const HistoryIndex& ix, const BitRel& rf, const BitRel& co) {
  BitRel cf(ix.size());
  for (uint32_t r = 0; r < ix.size(); ++r) {
    if (!ix.is_read(r)) continue;
    for (uint32_t w2 = 0; w2 < ix.size(); ++w2) {
      if (!rf.at(w2, r)) continue;
      for (uint32_t w1 = 0; w1 < ix.size(); ++w1) {
        if (!ix.is_write(w1) || ix.var(w1) != ix.var(r) || w1 == w2) continue;
        if (co.at(w1, r)) cf.set(w1, w2);
      }
    }
  }
  return cf;
}

namespace {

// Causal past of o under co, o included.
std::vector<uint32_t> past_of(const BitRel& co, uint32_t o) {
  std::vector<uint32_t> past;
  for (uint32_t i = 0; i < co.size(); ++i)
    if (i == o || co.at(i, o)) past.push_back(i);
  return past;
}

}  // namespace

BitRel compute_hb(const HistoryIndex& ix, const BitRel& rf, const BitRel& co, uint32_t o) {
  const size_t n = ix.size();
  std::vector<bool> in_past(n, false);
  for (uint32_t i : past_of(co, o)) in_past[i] = true;

  BitRel hb(n);
  for (uint32_t i = 0; i < n; ++i) {
    if (!in_past[i]) continue;
    for (uint32_t j = 0; j < n; ++j)
      if (in_past[j] && co.at(i, j)) hb.set(i, j);
  }

  // Reads whose return value the rule can propagate through: po-before-or-
  // equal o, with a known writer.
  std::vector<std::pair<uint32_t, uint32_t>> scoped_reads;  // (r2, w2)
  for (uint32_t r2 = 0; r2 < n; ++r2) {
    if (!ix.is_read(r2)) continue;
    if (r2 != o && !ix.po_before(r2, o)) continue;
    for (uint32_t w2 = 0; w2 < n; ++w2)
      if (rf.at(w2, r2)) scoped_reads.emplace_back(r2, w2);
  }

  bool grew = true;
  while (grew) {
    grew = false;
    for (auto [r2, w2] : scoped_reads) {
      for (uint32_t w1 = 0; w1 < n; ++w1) {
        if (!in_past[w1] || !ix.is_write(w1) || w1 == w2) continue;
        if (ix.var(w1) != ix.var(r2)) continue;
        if (hb.at(w1, r2) && !hb.at(w1, w2)) {
          hb.set(w1, w2);
          grew = true;
        }
      }
    }
    if (grew) hb.transitive_close();
  }
  return hb;
}

RelationSet compute_relations(const HistoryIndex& ix, const RelationOptions& opts) {
  RelationSet rs;
  rs.n = ix.size();
  rs.rf = compute_rf(ix);
  rs.co = compute_co(ix, rs.rf);
  if (rs.co.cycle) return rs;
  rs.cf = compute_cf(ix, rs.rf, rs.co.co);
  if (opts.hb_per_operation) {
    for (uint32_t o = 0; o < ix.size(); ++o)
      rs.hb.emplace(o, compute_hb(ix, rs.rf, rs.co.co, o));
  } else {
    for (const auto& chain : ix.by_site)
      if (!chain.empty()) rs.hb.emplace(chain.back(), compute_hb(ix, rs.rf, rs.co.co, chain.back()));
  }
  return rs;
}

}  // namespace ccheck
