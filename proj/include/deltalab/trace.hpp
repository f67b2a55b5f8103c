#pragma once

#include "deltalab/dyadic.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace deltalab {

enum class TraceKind { general, ce, left_ce };

std::string_view to_token(TraceKind kind);
TraceKind trace_kind_from_token(std::string_view token);

// A finite stage-by-position bit matrix: row s is the approximation at
// stage s restricted to positions 0..N-1. Immutable after construction.
// Stages and positions beyond the horizon are simply absent; every analysis
// below is the finite-horizon restriction of the corresponding infinitary
// notion. The kind flag is declared, not enforced; see verify_kind.
class ApproximationTrace {
public:
  ApproximationTrace(std::vector<std::string> rows, TraceKind kind);

  std::size_t stages() const { return rows_.size(); }
  std::size_t width() const { return rows_.front().size(); }
  const std::string& row(std::size_t s) const { return rows_[s]; }
  const std::vector<std::string>& rows() const { return rows_; }
  const std::string& final_row() const { return rows_.back(); }
  TraceKind kind() const { return kind_; }

private:
  std::vector<std::string> rows_;
  TraceKind kind_;
};

// counts[n-1] = number of stages s >= 1 at which the length-n prefix differs
// from the previous stage. Nondecreasing in n.
struct ChangeProfile {
  std::vector<std::uint64_t> counts;

  std::uint64_t at(std::size_t n) const { return counts[n - 1]; }
  std::size_t width() const { return counts.size(); }
};

// Tabulated bound g(1..N); values[n-1] = g(n).
struct GrowthBound {
  std::vector<std::uint64_t> values;

  std::uint64_t at(std::size_t n) const { return values[n - 1]; }
};

struct GChangeVerdict {
  bool holds = true;
  // Valid only when !holds: least n with counts[n] > g(n).
  std::size_t violating_n = 0;
  std::uint64_t count = 0;
  std::uint64_t bound = 0;
};

struct KindVerdict {
  bool holds = true;
  // Valid only when !holds: stage whose transition breaks the declared kind,
  // and the least offending position.
  std::size_t stage = 0;
  std::size_t position = 0;
};

struct LeftCeBoundCheck {
  std::size_t n = 0;
  std::uint64_t changes = 0;
  Dyadic bound;  // t + 2^(n-k), exact
  bool within = true;
};

struct LeftCeBoundReport {
  std::size_t k = 0;
  // Last stage at which the length-k prefix changed (0 if it never did).
  std::size_t stabilization_stage = 0;
  std::vector<LeftCeBoundCheck> checks;  // one per n in (t, N]
  bool all_within = true;
};

struct ChangeLowerRow {
  std::size_t n = 0;
  std::uint64_t count = 0;
  BigInt bound;  // floor(q(n) * 2^n)
  bool respected = true;
};

struct ChangeLowerReport {
  std::vector<ChangeLowerRow> rows;
};

// Least position at which rows s-1 and s differ, for each s >= 1; empty at
// stable stages. Entry 0 is always empty (the initial row is free).
std::vector<std::optional<std::size_t>> least_changed_positions(
    const ApproximationTrace& trace);

ChangeProfile change_profile(const ApproximationTrace& trace);

// Throws RangeError when the bound table does not cover 1..N.
GChangeVerdict is_g_change(const ApproximationTrace& trace,
                           const GrowthBound& bound);

// Confirms or refutes the declared kind flag; general always passes.
KindVerdict verify_kind(const ApproximationTrace& trace);

// Requires a verified left-c.e. trace and 1 <= k <= N; throws InvariantError
// otherwise. Every check holds for genuine left-c.e. traces.
LeftCeBoundReport left_ce_change_bound(const ApproximationTrace& trace,
                                       std::size_t k);

// q must be positive, nonincreasing, and cover 1..N. Purely empirical: the
// report says nothing about the infinite limit.
ChangeLowerReport change_lower_experiment(const ApproximationTrace& trace,
                                          const std::vector<Dyadic>& q);

// Text format: header "trace S N kind", then S rows of N bits.
// '#' starts a comment line; blank lines are skipped.
ApproximationTrace parse_trace(std::istream& in);
ApproximationTrace parse_trace(const std::string& text);
std::string serialize_trace(const ApproximationTrace& trace);

// One nonnegative integer per line, n-th line = g(n).
GrowthBound parse_growth_bound(std::istream& in);
GrowthBound parse_growth_bound(const std::string& text);

// One dyadic rational per line, n-th line = q(n).
std::vector<Dyadic> parse_q_table(std::istream& in);
std::vector<Dyadic> parse_q_table(const std::string& text);

}  // namespace deltalab
