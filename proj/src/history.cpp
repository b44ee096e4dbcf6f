#include "ccheck/history.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace ccheck {

std::string to_string(const OpId& id) {
  return std::to_string(id.site) + "." + std::to_string(id.seq);
}

ParseError::ParseError(size_t line, std::string message)
    : line_(line), what_("line " + std::to_string(line) + ": " + std::move(message)) {}

namespace {

bool valid_variable(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

// Parses a non-negative integer token; rejects signs and trailing junk.
std::optional<uint64_t> parse_uint(const std::string& tok) {
  if (tok.empty() || !std::isdigit(static_cast<unsigned char>(tok[0]))) return std::nullopt;
  uint64_t v = 0;
  for (char c : tok) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    uint64_t d = static_cast<uint64_t>(c - '0');
    if (v > (UINT64_MAX - d) / 10) return std::nullopt;
    v = v * 10 + d;
  }
  return v;
}

}  // namespace

Execution parse_trace(std::istream& in) {
  Execution out;
  std::unordered_map<uint32_t, uint32_t> next_seq;
  std::optional<bool> explicit_style;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;

    bool has_seq = toks[0].size() > 1 && toks[0][0] == '@';
    if (explicit_style && *explicit_style != has_seq)
      throw ParseError(lineno, "cannot mix explicit @seq and implicit lines");
    explicit_style = has_seq;

    std::optional<uint64_t> seq;
    if (has_seq) {
      seq = parse_uint(toks[0].substr(1));
      if (!seq || *seq > UINT32_MAX) throw ParseError(lineno, "bad @seq prefix '" + toks[0] + "'");
      toks.erase(toks.begin());
    }
    if (toks.size() != 4)
      throw ParseError(lineno, "expected '<site> <wr|rd> <variable> <value>', got " +
                                   std::to_string(toks.size()) + " fields");

    auto site = parse_uint(toks[0]);
    if (!site || *site > UINT32_MAX) throw ParseError(lineno, "bad site '" + toks[0] + "'");

    Method m;
    if (toks[1] == "wr") m = Method::Write;
    else if (toks[1] == "rd") m = Method::Read;
    else throw ParseError(lineno, "bad method '" + toks[1] + "' (want wr or rd)");

    if (!valid_variable(toks[2])) throw ParseError(lineno, "bad variable '" + toks[2] + "'");

    auto value = parse_uint(toks[3]);
    if (!value) throw ParseError(lineno, "bad value '" + toks[3] + "' (non-negative integer)");

    uint32_t s = static_cast<uint32_t>(*site);
    uint32_t expect = next_seq.count(s) ? next_seq[s] : 0;
    if (seq && *seq != expect)
      throw ParseError(lineno, "site " + std::to_string(s) + " expects seq " +
                                   std::to_string(expect) + ", got " + std::to_string(*seq));
    next_seq[s] = expect + 1;
    out.events.push_back(Operation{OpId{s, expect}, m, toks[2], *value});
  }
  return out;
}

Execution parse_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  return parse_trace(in);
}

std::string serialize_trace(const Execution& e) {
  std::string out;
  for (const Operation& op : e.events) {
    out += std::to_string(op.id.site);
    out += op.method == Method::Write ? " wr " : " rd ";
    out += op.variable;
    out += ' ';
    out += std::to_string(op.value);
    out += '\n';
  }
  return out;
}

History derive_history(const Execution& e) {
  History h;
  h.ops = e.events;
  std::stable_sort(h.ops.begin(), h.ops.end(),
                   [](const Operation& a, const Operation& b) { return a.id < b.id; });
  return h;
}

bool is_differentiated(const History& h) {
  std::map<std::pair<std::string, uint64_t>, int> writes;
  for (const Operation& op : h.ops) {
    if (op.method != Method::Write) continue;
    if (op.value == 0) return false;
    if (++writes[{op.variable, op.value}] > 1) return false;
  }
  return true;
}

History apply_renaming(const History& h, const Renaming& f) {
  History out = h;
  for (Operation& op : out.ops) op.value = f.apply(op.value);
  return out;
}

Execution apply_renaming(const Execution& e, const Renaming& f) {
  Execution out = e;
  for (Operation& op : out.events) op.value = f.apply(op.value);
  return out;
}

}  // namespace ccheck
