#pragma once

#include "deltalab/dyadic.hpp"
#include "deltalab/machine.hpp"
#include "deltalab/trace.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace deltalab {

// An exact evaluator for a cost function c(x,s): nonnegative dyadic values,
// nondecreasing in the stage s, nonincreasing in the position x. The four
// variants:
//   omega      c(x,s) = Omega_s - Omega_x of a fixed machine (0 when x > s)
//   stdk       c(x,s) = sum over w = x+1..s of 2^(-K_s(w)), undefined K -> 0
//   exp        c(x,s) = 2^(-x)
//   table      explicit cells[x][s]; monotonicity is not implied, run
//              validate_monotone over its extent
class CostFunction {
public:
  enum class Kind { omega, standard_k, exp_decay, table };

  static CostFunction omega(PrefixFreeMachine machine);
  static CostFunction standard_k(PrefixFreeMachine machine);
  static CostFunction exp_decay();
  static CostFunction table(std::vector<std::vector<Dyadic>> cells);

  Kind kind() const;
  // Mirrors the --cost argument shape: "omega:<id>", "stdk:<id>", "exp",
  // "table[XxS]".
  std::string describe() const;

  Dyadic eval(std::uint64_t x, std::uint64_t s) const;

  // Table extent; zero for the other variants.
  std::uint64_t table_max_index() const;
  std::uint64_t table_max_stage() const;

private:
  struct OmegaCost {
    PrefixFreeMachine machine;
  };
  struct StandardKCost {
    PrefixFreeMachine machine;
    // Machine outputs read as naturals via the length-order bijection,
    // sorted; only these w can contribute to the sum.
    std::vector<std::pair<std::uint64_t, std::string>> outputs_by_natural;
  };
  struct ExpDecayCost {};
  struct TableCost {
    std::vector<std::vector<Dyadic>> cells;  // cells[x][s]
  };

  using Impl = std::variant<OmegaCost, StandardKCost, ExpDecayCost, TableCost>;
  explicit CostFunction(Impl impl) : impl_(std::move(impl)) {}

  Impl impl_;
};

struct MonotoneVerdict {
  bool holds = true;
  // Valid only when !holds: the first grid cell (scanning x, then s) whose
  // neighbour breaks monotonicity. in_stage_axis means value = c(x,s) is
  // above next_value = c(x,s+1); otherwise next_value = c(x+1,s) is above
  // value = c(x,s).
  bool in_stage_axis = true;
  std::uint64_t x = 0;
  std::uint64_t s = 0;
  Dyadic value;
  Dyadic next_value;
};

// Checks both monotonicities on the full (max_index+1) x (max_stage+1) grid.
MonotoneVerdict validate_monotone(const CostFunction& cost,
                                  std::uint64_t max_index,
                                  std::uint64_t max_stage);

struct ObedienceCharge {
  std::uint64_t stage = 0;
  std::uint64_t position = 0;  // least changed position at that stage
  Dyadic charge;
};

// One charge per changing stage, at the least changed position; never a
// charge per changed bit. Total is the exact sum.
struct ObedienceLedger {
  std::vector<ObedienceCharge> charges;
  Dyadic total;
};

ObedienceLedger total_cost(const ApproximationTrace& trace,
                           const CostFunction& cost);

struct LimitProbeResult {
  Dyadic epsilon;
  std::uint64_t max_index = 0;
  std::uint64_t max_stage = 0;
  // Least x <= max_index whose sup over s <= max_stage stays at or below
  // epsilon; empty when no such x exists at this horizon (which says
  // nothing about the infinite limit).
  std::optional<std::uint64_t> index;
  Dyadic sup_at_index;  // valid when index is set
};

LimitProbeResult limit_condition_probe(const CostFunction& cost,
                                       const Dyadic& epsilon,
                                       std::uint64_t max_index,
                                       std::uint64_t max_stage);

// Maximum number of pairwise disjoint intervals [x,s) within [0,horizon)
// with c(x,s) >= 2^(-k), by the earliest-right-endpoint greedy sweep.
// Requires a monotone cost function (for tables, validate first).
std::uint64_t benignity_count(const CostFunction& cost, std::uint64_t k,
                              std::uint64_t horizon);

// Cost specifier strings: "omega:<machine-file>", "stdk:<machine-file>",
// "exp", "table:<file>". Referenced files are read from disk.
CostFunction parse_cost_spec(const std::string& spec);

// Table file: header "cost X S", then X lines of S dyadic rationals.
std::vector<std::vector<Dyadic>> parse_cost_table(std::istream& in);
std::vector<std::vector<Dyadic>> parse_cost_table(const std::string& text);
std::string serialize_cost_table(
    const std::vector<std::vector<Dyadic>>& cells);

}  // namespace deltalab
