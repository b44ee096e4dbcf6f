#include "testutil.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstring>

namespace testutil {

namespace {

// Slot alphabet for the exhaustive corpus: every (kind, var, value) combo.
struct SlotOp {
  ccheck::Method method;
  uint32_t var;   // 0 = x, 1 = y
  uint64_t value;
};

const std::vector<SlotOp>& slot_alphabet() {
  static const std::vector<SlotOp> ops = [] {
    std::vector<SlotOp> v;
    for (uint32_t var = 0; var < 2; ++var)
      for (uint64_t val = 1; val <= 3; ++val) v.push_back({ccheck::Method::Write, var, val});
    for (uint32_t var = 0; var < 2; ++var)
      for (uint64_t val = 0; val <= 3; ++val) v.push_back({ccheck::Method::Read, var, val});
    return v;
  }();
  return ops;
}

const char* var_name(uint32_t var) { return var == 0 ? "x" : "y"; }

void enumerate_slots(uint32_t n, uint32_t split, std::vector<ccheck::Operation>& ops,
                     uint32_t& write_mask,
                     const std::function<void(const ccheck::History&)>& fn) {
  if (ops.size() == n) {
    ccheck::History h{ops};
    fn(h);
    return;
  }
  uint32_t slot = static_cast<uint32_t>(ops.size());
  uint32_t site = slot < split ? 0 : 1;
  uint32_t seq = site == 0 ? slot : slot - split;
  for (const SlotOp& s : slot_alphabet()) {
    uint32_t bit = 0;
    if (s.method == ccheck::Method::Write) {
      bit = 1u << (s.var * 3 + (s.value - 1));
      if (write_mask & bit) continue;  // duplicate write, not differentiated
      write_mask |= bit;
    }
    ops.push_back({ccheck::OpId{site, seq}, s.method, var_name(s.var), s.value});
    enumerate_slots(n, split, ops, write_mask, fn);
    ops.pop_back();
    write_mask &= ~bit;
  }
}

}  // namespace

void for_each_small_history(uint32_t max_ops,
                            const std::function<void(const ccheck::History&)>& fn) {
  for (uint32_t n = 1; n <= max_ops; ++n) {
    for (uint32_t split = 0; split <= n; ++split) {
      std::vector<ccheck::Operation> ops;
      uint32_t write_mask = 0;
      enumerate_slots(n, split, ops, write_mask, fn);
    }
  }
}

ccheck::History random_history(ccheck::SplitMix64& rng, uint32_t max_ops, uint32_t sites,
                               uint32_t vars) {
  uint32_t n = 1 + rng.below(max_ops);
  std::vector<ccheck::Operation> ops;
  std::vector<uint32_t> seq(sites, 0);
  uint64_t counter = 0;
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t site = rng.below(sites);
    std::string var = "x" + std::to_string(rng.below(vars));
    if (rng.chance(1, 2)) {
      ops.push_back({ccheck::OpId{site, seq[site]++}, ccheck::Method::Write, var, ++counter});
    } else {
      // Any value up to the total op count: may be unwritten yet or ever.
      uint64_t val = rng.below(n + 1);
      ops.push_back({ccheck::OpId{site, seq[site]++}, ccheck::Method::Read, var, val});
    }
  }
  return ccheck::History{std::move(ops)};
}

ccheck::Execution random_writer_first_exec(ccheck::SplitMix64& rng, uint32_t max_ops,
                                           uint32_t sites, uint32_t vars) {
  uint32_t n = 1 + rng.below(max_ops);
  ccheck::Execution exec;
  std::vector<uint32_t> seq(sites, 0);
  std::vector<std::vector<uint64_t>> written(vars);
  uint64_t counter = 0;
  uint64_t bogus = 0;
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t site = rng.below(sites);
    uint32_t var = rng.below(vars);
    std::string name = "x" + std::to_string(var);
    if (rng.chance(1, 2)) {
      uint64_t value = ++counter;
      written[var].push_back(value);
      exec.events.push_back({ccheck::OpId{site, seq[site]++}, ccheck::Method::Write, name, value});
    } else {
      uint64_t value;
      uint32_t pick = rng.below(10);
      if (pick == 0) {
        value = 1000000 + ++bogus;  // nobody ever writes this
      } else if (pick <= 2 || written[var].empty()) {
        value = 0;
      } else {
        value = written[var][rng.below(static_cast<uint32_t>(written[var].size()))];
      }
      exec.events.push_back({ccheck::OpId{site, seq[site]++}, ccheck::Method::Read, name, value});
    }
  }
  return exec;
}

CmdResult run_cmd(const std::string& cmd) {
  char err_path[] = "/tmp/ccheck_test_err_XXXXXX";
  int fd = mkstemp(err_path);
  if (fd < 0) throw std::runtime_error("mkstemp failed");
  close(fd);

  std::string full = cmd + " 2>" + err_path;
  FILE* pipe = popen(full.c_str(), "r");
  if (!pipe) {
    unlink(err_path);
    throw std::runtime_error("popen failed for: " + cmd);
  }
  std::string out;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  int status = pclose(pipe);

  CmdResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = std::move(out);
  std::ifstream err_file(err_path);
  std::stringstream ss;
  ss << err_file.rdbuf();
  result.err = ss.str();
  unlink(err_path);
  return result;
}

std::string ccheck_bin() {
  const char* env = std::getenv("CCHECK_BIN");
  if (!env) throw std::runtime_error("CCHECK_BIN not set");
  return env;
}

std::string trace_dir() {
  const char* env = std::getenv("TRACE_DIR");
  if (!env) throw std::runtime_error("TRACE_DIR not set");
  return env;
}

}  // namespace testutil
