#include "deltalab/construct.hpp"

#include "deltalab/bits.hpp"
#include "deltalab/errors.hpp"
#include "text_lines.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace deltalab {

namespace {

std::uint64_t parse_u64_field(const std::string& field, const char* what) {
  std::uint64_t value = 0;
  const auto res =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw ParseError(std::string("bad ") + what + " '" + field + "'");
  }
  return value;
}

}  // namespace

CEFamily::CEFamily(std::vector<std::vector<CEEntry>> enumerations)
    : enums_(std::move(enumerations)) {
  for (std::size_t e = 0; e < enums_.size(); ++e) {
    std::vector<std::uint64_t> seen;
    for (const auto& entry : enums_[e]) {
      if (entry.stage == 0) {
        throw InvariantError("W_" + std::to_string(e) +
                             " has an entry at stage 0");
      }
      seen.push_back(entry.element);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      throw InvariantError("W_" + std::to_string(e) +
                           " enumerates an element twice");
    }
  }
}

ConstructionReport prompt_simple(const CostFunction& cost,
                                 const CEFamily& family, std::size_t stages,
                                 std::size_t width) {
  if (stages == 0 || width == 0) {
    throw RangeError("construction needs positive stages and width");
  }
  for (std::size_t e = 0; e < family.size(); ++e) {
    for (const auto& entry : family.enumeration(e)) {
      if (entry.element >= width) {
        throw RangeError("family element " + std::to_string(entry.element) +
                         " is outside width " + std::to_string(width));
      }
      if (entry.stage >= stages) {
        throw RangeError("family stage " + std::to_string(entry.stage) +
                         " is outside the stage horizon " +
                         std::to_string(stages));
      }
    }
  }

  std::vector<RequirementStatus> statuses(family.size());
  std::vector<std::string> rows;
  rows.reserve(stages);
  rows.emplace_back(width, '0');
  for (std::size_t s = 1; s < stages; ++s) {
    std::string row = rows.back();
    for (std::size_t e = 0; e < family.size() && e < s; ++e) {
      if (statuses[e].met) continue;
      const Dyadic allowance = Dyadic::pow2(-static_cast<std::int64_t>(e));
      std::optional<std::uint64_t> witness;
      for (const auto& entry : family.enumeration(e)) {
        if (entry.stage != s) continue;          // enters W_e exactly now
        if (entry.element < 2 * e) continue;
        if (witness && *witness <= entry.element) continue;
        if (cost.eval(entry.element, s) <= allowance) {
          witness = entry.element;
        }
      }
      if (witness) {
        row[*witness] = '1';
        statuses[e] = RequirementStatus{true, *witness,
                                        static_cast<std::uint64_t>(s)};
      }
    }
    rows.push_back(std::move(row));
  }

  ApproximationTrace trace(std::move(rows), TraceKind::ce);
  ObedienceLedger ledger = total_cost(trace, cost);
  return ConstructionReport{std::move(trace), std::move(statuses),
                            std::move(ledger)};
}

SolovayTest::SolovayTest(std::vector<std::string> strings)
    : strings_(std::move(strings)) {
  for (const auto& sigma : strings_) {
    if (!is_bit_string(sigma)) {
      throw InvariantError("test string '" + sigma + "' is not binary");
    }
    weight_ += Dyadic::pow2(-static_cast<std::int64_t>(sigma.size()));
  }
}

SolovayTest solovay_extract(const ApproximationTrace& trace) {
  std::vector<std::string> strings;
  const auto least = least_changed_positions(trace);
  for (std::size_t s = 1; s < trace.stages(); ++s) {
    if (least[s]) {
      strings.push_back(trace.row(s).substr(0, *least[s] + 1));
    }
  }
  return SolovayTest(std::move(strings));
}

std::uint64_t hit_count(const SolovayTest& test, std::string_view row) {
  std::uint64_t hits = 0;
  for (const auto& sigma : test.strings()) {
    if (is_prefix_of(sigma, row)) ++hits;
  }
  return hits;
}

DeficiencyReport k_trivial_deficiency(const PrefixFreeMachine& machine,
                                      std::string_view a_bits,
                                      std::size_t n_max) {
  if (!is_bit_string(a_bits)) {
    throw InvariantError("A must be a bit string");
  }
  if (n_max > a_bits.size()) {
    throw RangeError("nMax " + std::to_string(n_max) +
                     " exceeds the length of A (" +
                     std::to_string(a_bits.size()) + ")");
  }
  const std::uint64_t final_stage = machine.max_stage();
  DeficiencyReport report;
  for (std::size_t n = 0; n <= n_max; ++n) {
    DeficiencyRow row;
    row.n = n;
    row.k_prefix = machine.k_at(a_bits.substr(0, n), final_stage);
    row.k_natural = machine.k_at(encode_natural(n), final_stage);
    if (row.k_prefix && row.k_natural) {
      row.deficiency = static_cast<std::int64_t>(*row.k_prefix) -
                       static_cast<std::int64_t>(*row.k_natural);
      if (!report.max_deficiency ||
          *row.deficiency > *report.max_deficiency) {
        report.max_deficiency = row.deficiency;
      }
    }
    report.rows.push_back(row);
  }
  return report;
}

CEFamily parse_ce_family(std::istream& in) {
  std::map<std::uint64_t, std::vector<CEEntry>> gathered;
  std::uint64_t max_e = 0;
  bool any = false;
  for (const auto& line : detail::content_lines(in)) {
    const auto fields = detail::split_fields(line);
    if (fields.size() != 3) {
      throw ParseError("family line '" + line + "' must be 'e element stage'");
    }
    const std::uint64_t e = parse_u64_field(fields[0], "requirement index");
    CEEntry entry;
    entry.element = parse_u64_field(fields[1], "element");
    entry.stage = parse_u64_field(fields[2], "stage");
    if (entry.stage == 0) {
      throw ParseError("family line '" + line + "' needs a positive stage");
    }
    gathered[e].push_back(entry);
    max_e = std::max(max_e, e);
    any = true;
  }
  std::vector<std::vector<CEEntry>> enums(any ? max_e + 1 : 0);
  for (auto& [e, entries] : gathered) {
    enums[e] = std::move(entries);
  }
  return CEFamily(std::move(enums));
}

CEFamily parse_ce_family(const std::string& text) {
  std::istringstream in(text);
  return parse_ce_family(in);
}

std::string serialize_ce_family(const CEFamily& family) {
  std::string out;
  for (std::size_t e = 0; e < family.size(); ++e) {
    for (const auto& entry : family.enumeration(e)) {
      out += std::to_string(e) + " " + std::to_string(entry.element) + " " +
             std::to_string(entry.stage) + "\n";
    }
  }
  return out;
}

SolovayTest parse_solovay(std::istream& in) {
  std::vector<std::string> strings;
  std::optional<Dyadic> declared;
  for (const auto& line : detail::content_lines(in)) {
    const auto fields = detail::split_fields(line);
    if (declared) {
      throw ParseError("content after the weight line");
    }
    if (fields.size() == 2 && fields[0] == "sigma") {
      std::string sigma = fields[1] == "-" ? "" : fields[1];
      if (!is_bit_string(sigma)) {
        throw ParseError("test string '" + fields[1] + "' is not binary");
      }
      strings.push_back(std::move(sigma));
    } else if (fields.size() == 2 && fields[0] == "weight") {
      declared = Dyadic::parse(fields[1]);
    } else {
      throw ParseError("bad test line '" + line + "'");
    }
  }
  SolovayTest test(std::move(strings));
  if (declared && *declared != test.weight()) {
    throw ParseError("declared weight " + declared->str() +
                     " does not match the recomputed " + test.weight().str());
  }
  return test;
}

SolovayTest parse_solovay(const std::string& text) {
  std::istringstream in(text);
  return parse_solovay(in);
}

std::string serialize_solovay(const SolovayTest& test) {
  std::string out;
  for (const auto& sigma : test.strings()) {
    out += "sigma ";
    out += sigma.empty() ? "-" : sigma;
    out += '\n';
  }
  out += "weight " + test.weight().str() + "\n";
  return out;
}

std::string serialize_construction_report(const ConstructionReport& report) {
  std::string out = serialize_trace(report.trace);
  out += "requirements " + std::to_string(report.requirements.size()) + "\n";
  for (std::size_t e = 0; e < report.requirements.size(); ++e) {
    const auto& status = report.requirements[e];
    if (status.met) {
      out += "met " + std::to_string(e) + " " +
             std::to_string(status.element) + " " +
             std::to_string(status.stage) + "\n";
    } else {
      out += "unmet " + std::to_string(e) + "\n";
    }
  }
  for (const auto& charge : report.ledger.charges) {
    out += "charge " + std::to_string(charge.stage) + " " +
           std::to_string(charge.position) + " " + charge.charge.str() + "\n";
  }
  out += "total " + report.ledger.total.str() + "\n";
  return out;
}

ConstructionReport parse_construction_report(std::istream& in) {
  const auto lines = detail::content_lines(in);
  std::size_t at = 0;
  const auto next = [&]() -> const std::string& {
    if (at >= lines.size()) {
      throw ParseError("construction report ends early");
    }
    return lines[at++];
  };

  const auto header = detail::split_fields(next());
  if (header.size() != 4 || header[0] != "trace") {
    throw ParseError("construction report must start with a trace block");
  }
  const std::uint64_t stages = parse_u64_field(header[1], "stage count");
  parse_u64_field(header[2], "width");
  if (header[3] != "ce") {
    throw ParseError("construction report trace must have kind ce");
  }
  std::vector<std::string> rows;
  for (std::uint64_t s = 0; s < stages; ++s) {
    rows.push_back(next());
  }
  ApproximationTrace trace(std::move(rows), TraceKind::ce);

  const auto req_header = detail::split_fields(next());
  if (req_header.size() != 2 || req_header[0] != "requirements") {
    throw ParseError("expected 'requirements E'");
  }
  const std::uint64_t count =
      parse_u64_field(req_header[1], "requirement count");
  std::vector<RequirementStatus> statuses;
  for (std::uint64_t e = 0; e < count; ++e) {
    const auto fields = detail::split_fields(next());
    if (fields.size() == 4 && fields[0] == "met") {
      if (parse_u64_field(fields[1], "requirement index") != e) {
        throw ParseError("requirement lines out of order");
      }
      statuses.push_back(RequirementStatus{
          true, parse_u64_field(fields[2], "element"),
          parse_u64_field(fields[3], "stage")});
    } else if (fields.size() == 2 && fields[0] == "unmet") {
      if (parse_u64_field(fields[1], "requirement index") != e) {
        throw ParseError("requirement lines out of order");
      }
      statuses.push_back(RequirementStatus{});
    } else {
      throw ParseError("bad requirement line '" + lines[at - 1] + "'");
    }
  }

  ObedienceLedger ledger;
  bool saw_total = false;
  while (at < lines.size()) {
    const auto fields = detail::split_fields(next());
    if (fields.size() == 4 && fields[0] == "charge") {
      ObedienceCharge charge;
      charge.stage = parse_u64_field(fields[1], "charge stage");
      charge.position = parse_u64_field(fields[2], "charge position");
      charge.charge = Dyadic::parse(fields[3]);
      ledger.total += charge.charge;
      ledger.charges.push_back(std::move(charge));
    } else if (fields.size() == 2 && fields[0] == "total") {
      if (Dyadic::parse(fields[1]) != ledger.total) {
        throw ParseError("ledger total does not match the sum of charges");
      }
      saw_total = true;
      break;
    } else {
      throw ParseError("bad ledger line '" + lines[at - 1] + "'");
    }
  }
  if (!saw_total) {
    throw ParseError("construction report is missing the total line");
  }
  if (at != lines.size()) {
    throw ParseError("content after the total line");
  }
  return ConstructionReport{std::move(trace), std::move(statuses),
                            std::move(ledger)};
}

ConstructionReport parse_construction_report(const std::string& text) {
  std::istringstream in(text);
  return parse_construction_report(in);
}

}  // namespace deltalab
