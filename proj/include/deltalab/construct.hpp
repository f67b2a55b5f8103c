#pragma once

#include "deltalab/cost.hpp"
#include "deltalab/dyadic.hpp"
#include "deltalab/machine.hpp"
#include "deltalab/trace.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace deltalab {

struct CEEntry {
  std::uint64_t element = 0;
  std::uint64_t stage = 1;  // the unique stage at which the element enters
};

// Stagewise enumerations W_e for e = 0..size-1.
class CEFamily {
public:
  explicit CEFamily(std::vector<std::vector<CEEntry>> enumerations);

  std::size_t size() const { return enums_.size(); }
  const std::vector<CEEntry>& enumeration(std::size_t e) const {
    return enums_[e];
  }

private:
  std::vector<std::vector<CEEntry>> enums_;
};

struct RequirementStatus {
  bool met = false;
  std::uint64_t element = 0;  // valid when met
  std::uint64_t stage = 0;    // valid when met
};

struct ConstructionReport {
  ApproximationTrace trace;  // kind ce, the enumeration of A
  std::vector<RequirementStatus> requirements;
  ObedienceLedger ledger;
};

// Stage loop for the prompt-simplicity requirements: at stage s, for each
// unmet e < s in increasing order, enumerate the least x >= 2e that enters
// W_e exactly at s and costs at most 2^(-e). Deterministic and sequential.
// Requires every family element < width and every stage < stages.
ConstructionReport prompt_simple(const CostFunction& cost,
                                 const CEFamily& family, std::size_t stages,
                                 std::size_t width);

// A finite list of bit strings with its exact total weight sum 2^(-|sigma|).
// Duplicates are permitted; the weight is computed, never stored apart.
class SolovayTest {
public:
  SolovayTest() = default;
  explicit SolovayTest(std::vector<std::string> strings);

  const std::vector<std::string>& strings() const { return strings_; }
  const Dyadic& weight() const { return weight_; }

private:
  std::vector<std::string> strings_;
  Dyadic weight_;
};

// One string per changing stage: the new row's prefix through the least
// changed position. The weight is exactly half the ExpDecay tax of the
// trace.
SolovayTest solovay_extract(const ApproximationTrace& trace);

// Number of test strings that are initial segments of the given row.
std::uint64_t hit_count(const SolovayTest& test, std::string_view row);

struct DeficiencyRow {
  std::uint64_t n = 0;
  std::optional<std::uint64_t> k_prefix;   // K(A restricted to n)
  std::optional<std::uint64_t> k_natural;  // K(encode_natural(n))
  // k_prefix - k_natural when both are defined; incomparable otherwise.
  std::optional<std::int64_t> deficiency;
};

struct DeficiencyReport {
  std::vector<DeficiencyRow> rows;
  // Max deficiency over the comparable n; empty when none are comparable.
  std::optional<std::int64_t> max_deficiency;
};

// K values are taken at the machine's max stage (final K). Requires
// n_max <= |a_bits|.
DeficiencyReport k_trivial_deficiency(const PrefixFreeMachine& machine,
                                      std::string_view a_bits,
                                      std::size_t n_max);

// Text format: lines "e element stage"; '#' starts a comment line.
CEFamily parse_ce_family(std::istream& in);
CEFamily parse_ce_family(const std::string& text);
std::string serialize_ce_family(const CEFamily& family);

// Text format: "sigma <bits|->" lines in order, then "weight <dyadic>".
// On parse the weight line, when present, must match the recomputed sum.
SolovayTest parse_solovay(std::istream& in);
SolovayTest parse_solovay(const std::string& text);
std::string serialize_solovay(const SolovayTest& test);

// Flat text block: the trace in its file format, then "requirements E",
// then one "met e x stage" or "unmet e" line per requirement, then
// "charge stage position value" lines, then "total value".
ConstructionReport parse_construction_report(std::istream& in);
ConstructionReport parse_construction_report(const std::string& text);
std::string serialize_construction_report(const ConstructionReport& report);

}  // namespace deltalab
