#pragma once

#include "deltalab/dyadic.hpp"
#include "deltalab/trace.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace deltalab {

// One halting computation: the program halts at exactly this stage and
// prints the output.
struct Computation {
  std::string program;
  std::string output;
  std::uint64_t stage = 1;
};

struct MachineVerdict {
  enum class Status {
    valid,
    duplicate_program,
    kraft_overweight,
    prefix_violation,
    bad_stage,
  };

  Status status = Status::valid;
  // Witnesses: the offending program(s) for duplicate/prefix/bad_stage.
  std::string program_a;
  std::string program_b;
  Dyadic kraft_sum;  // exact, reported for every status

  bool ok() const { return status == Status::valid; }
};

std::string_view to_token(MachineVerdict::Status status);

// A toy prefix-free machine as an explicit halting table. Not an
// interpreter: the table is the whole machine, which keeps Omega and K
// exact and auditable. Immutable; computations are kept sorted by program.
class PrefixFreeMachine {
public:
  PrefixFreeMachine(std::vector<Computation> computations,
                    std::string identifier);

  const std::vector<Computation>& computations() const { return comps_; }
  const std::string& identifier() const { return id_; }
  std::uint64_t max_stage() const { return max_stage_; }

  // Checks duplicates, Kraft weight, prefix-freeness, and positive stages,
  // in that order, reporting the first offence.
  MachineVerdict validate() const;

  // Exact Kraft sum over the whole table.
  Dyadic kraft_sum() const;

  // Measure of programs halted by the given stage; nondecreasing in stage.
  Dyadic omega_at(std::uint64_t stage) const;

  // Least halting program length printing `output` by `stage`, if any.
  std::optional<std::uint64_t> k_at(std::string_view output,
                                    std::uint64_t stage) const;

  // Row s = first `width` binary-expansion digits of omega_at(s), for
  // s = 0..stages-1. A value of exactly 1 is written as the all-ones row.
  ApproximationTrace omega_trace(std::size_t stages, std::size_t width) const;

private:
  std::vector<Computation> comps_;
  std::string id_;
  std::uint64_t max_stage_ = 0;
  // Halting stages in increasing order with the cumulative measure after
  // each; omega_at is a binary search over this.
  std::vector<std::pair<std::uint64_t, Dyadic>> omega_steps_;
  // Per output: (stage, running minimum program length), stage-sorted.
  std::map<std::string, std::vector<std::pair<std::uint64_t, std::uint64_t>>,
           std::less<>>
      k_steps_;
};

// Length-order bijection between naturals and bit strings:
// 0 <-> "", 1 <-> "0", 2 <-> "1", 3 <-> "00", ...
std::string encode_natural(std::uint64_t n);
// Throws RangeError for strings of 64 or more bits.
std::uint64_t decode_natural(std::string_view bits);

// Text format: one computation per line, "program output stage"; the token
// '-' stands for the empty string; '#' starts a comment line.
PrefixFreeMachine parse_machine(std::istream& in, std::string identifier);
PrefixFreeMachine parse_machine(const std::string& text,
                                std::string identifier);
// Canonical: one line per computation, sorted by program.
std::string serialize_machine(const PrefixFreeMachine& machine);

}  // namespace deltalab
