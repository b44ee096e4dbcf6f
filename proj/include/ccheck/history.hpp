#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ccheck {

// Operations are invocations of a read-write store: wr(x, v) writes value v
// to variable x, rd(x) # v is a read of x that returned v. Value 0 is the
// initial value of every variable and is never an acceptable write argument
// in differentiated histories.
enum class Method : uint8_t { Write, Read };

// Stable operation identity: `site` is the issuing session and `seq` the
// position within that session (0-based, gapless). The program order of a
// history is exactly the per-site order of seq values.
struct OpId {
  uint32_t site = 0;
  uint32_t seq = 0;

  friend bool operator==(const OpId&, const OpId&) = default;
  friend auto operator<=>(const OpId&, const OpId&) = default;
};

std::string to_string(const OpId& id);  // "site.seq"

struct Operation {
  OpId id;
  Method method = Method::Read;
  std::string variable;
  // Written value for writes, returned value for reads.
  uint64_t value = 0;

  friend bool operator==(const Operation&, const Operation&) = default;
};

// A totally ordered stream of operations, e.g. what a monitor observes or a
// store simulation emits. Events of the same site appear in seq order.
struct Execution {
  std::vector<Operation> events;

  friend bool operator==(const Execution&, const Execution&) = default;
};

// A history is the poset abstraction of an execution: the set of operations
// together with program order. Operations are kept sorted by (site, seq);
// the global interleaving is deliberately forgotten.
struct History {
  std::vector<Operation> ops;

  friend bool operator==(const History&, const History&) = default;
};

// Total function on data values, stored as a finite table plus a default
// rule. Used to probe data independence: renaming a history must commute
// with the checkers' verdicts.
struct Renaming {
  std::unordered_map<uint64_t, uint64_t> table;
  // When set, values absent from the table map to this constant; otherwise
  // they map to themselves.
  std::optional<uint64_t> otherwise;

  uint64_t apply(uint64_t v) const {
    auto it = table.find(v);
    if (it != table.end()) return it->second;
    return otherwise ? *otherwise : v;
  }
};

class ParseError : public std::exception {
 public:
  ParseError(size_t line, std::string message);
  size_t line() const { return line_; }
  const char* what() const noexcept override { return what_.c_str(); }

 private:
  size_t line_;
  std::string what_;
};

// Trace format, one event per line, in global (interleaved) order:
//
//   <site> <method> <variable> <value>
//
// where site is a non-negative integer, method is `wr` or `rd`, variable
// matches [A-Za-z0-9_]+ and value is a non-negative integer. `#` starts a
// comment that runs to end of line; blank lines are skipped. Sequence
// numbers are assigned per site in order of appearance. Alternatively every
// event line may carry an explicit `@<seq>` prefix; explicit sequence
// numbers must count 0,1,2,... per site in file order, and the two styles
// cannot be mixed in one file. Errors carry the 1-based line number.
Execution parse_trace(std::istream& in);
Execution parse_trace_file(const std::string& path);

// Canonical serialization: implicit-seq lines in event order, single spaces,
// trailing newline. parse_trace(serialize_trace(e)) reproduces e.
std::string serialize_trace(const Execution& e);

// Groups events by site. The result owns sorted (site, seq) operations;
// counts per site are preserved.
History derive_history(const Execution& e);

// True when no two writes agree on (variable, value) and no write uses the
// initial value 0. Reads are unconstrained.
bool is_differentiated(const History& h);

// Applies f to every data value: write arguments and read return values
// alike. Structure (ids, methods, variables) is untouched.
History apply_renaming(const History& h, const Renaming& f);
Execution apply_renaming(const Execution& e, const Renaming& f);

}  // namespace ccheck
