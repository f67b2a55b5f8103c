#include "deltalab/machine.hpp"

#include "deltalab/bits.hpp"
#include "deltalab/errors.hpp"
#include "text_lines.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>
#include <sstream>
#include <tuple>

namespace deltalab {

std::string_view to_token(MachineVerdict::Status status) {
  switch (status) {
    case MachineVerdict::Status::valid:
      return "valid";
    case MachineVerdict::Status::duplicate_program:
      return "duplicate-program";
    case MachineVerdict::Status::kraft_overweight:
      return "kraft-overweight";
    case MachineVerdict::Status::prefix_violation:
      return "prefix-violation";
    case MachineVerdict::Status::bad_stage:
      return "bad-stage";
  }
  return "valid";
}

PrefixFreeMachine::PrefixFreeMachine(std::vector<Computation> computations,
                                     std::string identifier)
    : comps_(std::move(computations)), id_(std::move(identifier)) {
  for (const auto& comp : comps_) {
    if (!is_bit_string(comp.program) || !is_bit_string(comp.output)) {
      throw InvariantError("machine '" + id_ +
                           "' has a non-binary program or output");
    }
  }
  std::sort(comps_.begin(), comps_.end(), [](const auto& a, const auto& b) {
    return std::tie(a.program, a.stage, a.output) <
           std::tie(b.program, b.stage, b.output);
  });

  std::vector<const Computation*> by_stage;
  by_stage.reserve(comps_.size());
  for (const auto& comp : comps_) {
    by_stage.push_back(&comp);
    max_stage_ = std::max(max_stage_, comp.stage);
  }
  std::stable_sort(by_stage.begin(), by_stage.end(),
                   [](const auto* a, const auto* b) {
                     return a->stage < b->stage;
                   });

  Dyadic running;
  for (const auto* comp : by_stage) {
    running += Dyadic::pow2(-static_cast<std::int64_t>(comp->program.size()));
    if (!omega_steps_.empty() && omega_steps_.back().first == comp->stage) {
      omega_steps_.back().second = running;
    } else {
      omega_steps_.emplace_back(comp->stage, running);
    }
    auto& steps = k_steps_[comp->output];
    const std::uint64_t len = comp->program.size();
    if (steps.empty()) {
      steps.emplace_back(comp->stage, len);
    } else if (steps.back().first == comp->stage) {
      steps.back().second = std::min(steps.back().second, len);
    } else if (len < steps.back().second) {
      steps.emplace_back(comp->stage, len);
    }
  }
}

MachineVerdict PrefixFreeMachine::validate() const {
  MachineVerdict verdict;
  verdict.kraft_sum = kraft_sum();
  for (const auto& comp : comps_) {
    if (comp.stage == 0) {
      verdict.status = MachineVerdict::Status::bad_stage;
      verdict.program_a = comp.program;
      return verdict;
    }
  }
  for (std::size_t i = 0; i + 1 < comps_.size(); ++i) {
    if (comps_[i].program == comps_[i + 1].program) {
      verdict.status = MachineVerdict::Status::duplicate_program;
      verdict.program_a = comps_[i].program;
      verdict.program_b = comps_[i + 1].program;
      return verdict;
    }
  }
  if (verdict.kraft_sum > Dyadic(1)) {
    verdict.status = MachineVerdict::Status::kraft_overweight;
    return verdict;
  }
  // Programs are sorted lexicographically, so any prefix pair shows up as
  // an adjacent pair.
  for (std::size_t i = 0; i + 1 < comps_.size(); ++i) {
    if (is_proper_prefix_of(comps_[i].program, comps_[i + 1].program)) {
      verdict.status = MachineVerdict::Status::prefix_violation;
      verdict.program_a = comps_[i].program;
      verdict.program_b = comps_[i + 1].program;
      return verdict;
    }
  }
  return verdict;
}

Dyadic PrefixFreeMachine::kraft_sum() const {
  return omega_steps_.empty() ? Dyadic() : omega_steps_.back().second;
}

Dyadic PrefixFreeMachine::omega_at(std::uint64_t stage) const {
  auto it = std::upper_bound(
      omega_steps_.begin(), omega_steps_.end(), stage,
      [](std::uint64_t s, const auto& step) { return s < step.first; });
  if (it == omega_steps_.begin()) return Dyadic();
  return std::prev(it)->second;
}

std::optional<std::uint64_t> PrefixFreeMachine::k_at(
    std::string_view output, std::uint64_t stage) const {
  const auto entry = k_steps_.find(output);
  if (entry == k_steps_.end()) return std::nullopt;
  const auto& steps = entry->second;
  auto it = std::upper_bound(
      steps.begin(), steps.end(), stage,
      [](std::uint64_t s, const auto& step) { return s < step.first; });
  if (it == steps.begin()) return std::nullopt;
  return std::prev(it)->second;
}

ApproximationTrace PrefixFreeMachine::omega_trace(std::size_t stages,
                                                  std::size_t width) const {
  if (stages == 0 || width == 0) {
    throw RangeError("omega trace needs positive stages and width");
  }
  const BigInt cap = (BigInt(1) << static_cast<unsigned>(width)) - 1;
  std::vector<std::string> rows;
  rows.reserve(stages);
  for (std::size_t s = 0; s < stages; ++s) {
    const Dyadic v = omega_at(s);
    BigInt scaled;  // floor(v * 2^width)
    if (width >= v.exponent()) {
      scaled = v.numerator()
               << static_cast<unsigned>(width - v.exponent());
    } else {
      scaled = v.numerator() >> static_cast<unsigned>(v.exponent() - width);
    }
    if (scaled > cap) scaled = cap;
    std::string row(width, '0');
    for (std::size_t i = 0; i < width; ++i) {
      if (boost::multiprecision::bit_test(scaled, width - 1 - i)) {
        row[i] = '1';
      }
    }
    rows.push_back(std::move(row));
  }
  return ApproximationTrace(std::move(rows), TraceKind::left_ce);
}

std::string encode_natural(std::uint64_t n) {
  if (n == std::numeric_limits<std::uint64_t>::max()) {
    throw RangeError("natural too large to encode");
  }
  const std::uint64_t m = n + 1;
  const int width = std::bit_width(m) - 1;  // bits below the leading 1
  std::string bits(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if ((m >> (width - 1 - i)) & 1u) bits[static_cast<std::size_t>(i)] = '1';
  }
  return bits;
}

std::uint64_t decode_natural(std::string_view bits) {
  if (!is_bit_string(bits)) {
    throw ParseError("decode_natural expects a bit string");
  }
  if (bits.size() >= 64) {
    throw RangeError("bit string too long to decode into a 64-bit natural");
  }
  std::uint64_t m = 1;
  for (char c : bits) {
    m = (m << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return m - 1;
}

PrefixFreeMachine parse_machine(std::istream& in, std::string identifier) {
  std::vector<Computation> comps;
  for (const auto& line : detail::content_lines(in)) {
    const auto fields = detail::split_fields(line);
    if (fields.size() != 3) {
      throw ParseError("machine line '" + line +
                       "' must be 'program output stage'");
    }
    Computation comp;
    comp.program = fields[0] == "-" ? "" : fields[0];
    comp.output = fields[1] == "-" ? "" : fields[1];
    if (!is_bit_string(comp.program) || !is_bit_string(comp.output)) {
      throw ParseError("machine line '" + line +
                       "' has a non-binary program or output");
    }
    const auto& st = fields[2];
    const auto res =
        std::from_chars(st.data(), st.data() + st.size(), comp.stage);
    if (res.ec != std::errc{} || res.ptr != st.data() + st.size() ||
        comp.stage == 0) {
      throw ParseError("machine line '" + line +
                       "' needs a positive integer stage");
    }
    comps.push_back(std::move(comp));
  }
  return PrefixFreeMachine(std::move(comps), std::move(identifier));
}

PrefixFreeMachine parse_machine(const std::string& text,
                                std::string identifier) {
  std::istringstream in(text);
  return parse_machine(in, std::move(identifier));
}

std::string serialize_machine(const PrefixFreeMachine& machine) {
  std::string out;
  for (const auto& comp : machine.computations()) {
    out += comp.program.empty() ? "-" : comp.program;
    out += ' ';
    out += comp.output.empty() ? "-" : comp.output;
    out += ' ';
    out += std::to_string(comp.stage);
    out += '\n';
  }
  return out;
}

}  // namespace deltalab
