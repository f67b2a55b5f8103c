#include "deltalab/cost.hpp"

#include "deltalab/errors.hpp"
#include "text_lines.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace deltalab {

CostFunction CostFunction::omega(PrefixFreeMachine machine) {
  return CostFunction(Impl(OmegaCost{std::move(machine)}));
}

CostFunction CostFunction::standard_k(PrefixFreeMachine machine) {
  StandardKCost impl{std::move(machine), {}};
  std::set<std::string> outputs;
  for (const auto& comp : impl.machine.computations()) {
    outputs.insert(comp.output);
  }
  for (const auto& output : outputs) {
    if (output.size() >= 64) continue;  // cannot be reached by any stage
    impl.outputs_by_natural.emplace_back(decode_natural(output), output);
  }
  std::sort(impl.outputs_by_natural.begin(), impl.outputs_by_natural.end());
  return CostFunction(Impl(std::move(impl)));
}

CostFunction CostFunction::exp_decay() {
  return CostFunction(Impl(ExpDecayCost{}));
}

CostFunction CostFunction::table(std::vector<std::vector<Dyadic>> cells) {
  if (cells.empty() || cells.front().empty()) {
    throw InvariantError("cost table needs at least one cell");
  }
  const std::size_t stages = cells.front().size();
  for (const auto& row : cells) {
    if (row.size() != stages) {
      throw InvariantError("cost table rows must have equal length");
    }
  }
  return CostFunction(Impl(TableCost{std::move(cells)}));
}

CostFunction::Kind CostFunction::kind() const {
  if (std::holds_alternative<OmegaCost>(impl_)) return Kind::omega;
  if (std::holds_alternative<StandardKCost>(impl_)) return Kind::standard_k;
  if (std::holds_alternative<ExpDecayCost>(impl_)) return Kind::exp_decay;
  return Kind::table;
}

std::string CostFunction::describe() const {
  if (const auto* o = std::get_if<OmegaCost>(&impl_)) {
    return "omega:" + o->machine.identifier();
  }
  if (const auto* k = std::get_if<StandardKCost>(&impl_)) {
    return "stdk:" + k->machine.identifier();
  }
  if (std::holds_alternative<ExpDecayCost>(impl_)) {
    return "exp";
  }
  const auto& cells = std::get<TableCost>(impl_).cells;
  return "table[" + std::to_string(cells.size()) + "x" +
         std::to_string(cells.front().size()) + "]";
}

Dyadic CostFunction::eval(std::uint64_t x, std::uint64_t s) const {
  if (const auto* o = std::get_if<OmegaCost>(&impl_)) {
    if (x >= s) return Dyadic();
    return o->machine.omega_at(s) - o->machine.omega_at(x);
  }
  if (const auto* k = std::get_if<StandardKCost>(&impl_)) {
    Dyadic sum;
    for (const auto& [w, output] : k->outputs_by_natural) {
      if (w <= x) continue;
      if (w > s) break;
      if (const auto len = k->machine.k_at(output, s)) {
        sum += Dyadic::pow2(-static_cast<std::int64_t>(*len));
      }
    }
    return sum;
  }
  if (std::holds_alternative<ExpDecayCost>(impl_)) {
    if (x > static_cast<std::uint64_t>(
                std::numeric_limits<std::int64_t>::max())) {
      throw RangeError("exp-decay position too large");
    }
    return Dyadic::pow2(-static_cast<std::int64_t>(x));
  }
  const auto& cells = std::get<TableCost>(impl_).cells;
  if (x >= cells.size() || s >= cells.front().size()) {
    throw RangeError("cost table access (" + std::to_string(x) + "," +
                     std::to_string(s) + ") outside " +
                     std::to_string(cells.size()) + "x" +
                     std::to_string(cells.front().size()));
  }
  return cells[x][s];
}

std::uint64_t CostFunction::table_max_index() const {
  const auto* t = std::get_if<TableCost>(&impl_);
  return t ? t->cells.size() - 1 : 0;
}

std::uint64_t CostFunction::table_max_stage() const {
  const auto* t = std::get_if<TableCost>(&impl_);
  return t ? t->cells.front().size() - 1 : 0;
}

MonotoneVerdict validate_monotone(const CostFunction& cost,
                                  std::uint64_t max_index,
                                  std::uint64_t max_stage) {
  MonotoneVerdict verdict;
  for (std::uint64_t x = 0; x <= max_index; ++x) {
    Dyadic here = cost.eval(x, 0);
    for (std::uint64_t s = 0; s <= max_stage; ++s) {
      if (s < max_stage) {
        const Dyadic next = cost.eval(x, s + 1);
        if (here > next) {
          return MonotoneVerdict{false, true, x, s, here, next};
        }
        if (x < max_index) {
          const Dyadic below = cost.eval(x + 1, s);
          if (below > here) {
            return MonotoneVerdict{false, false, x, s, here, below};
          }
        }
        here = next;
      } else if (x < max_index) {
        const Dyadic below = cost.eval(x + 1, s);
        if (below > here) {
          return MonotoneVerdict{false, false, x, s, here, below};
        }
      }
    }
  }
  return verdict;
}

ObedienceLedger total_cost(const ApproximationTrace& trace,
                           const CostFunction& cost) {
  ObedienceLedger ledger;
  const auto least = least_changed_positions(trace);
  for (std::size_t s = 1; s < trace.stages(); ++s) {
    if (!least[s]) continue;
    ObedienceCharge charge;
    charge.stage = s;
    charge.position = *least[s];
    charge.charge = cost.eval(charge.position, s);
    ledger.total += charge.charge;
    ledger.charges.push_back(std::move(charge));
  }
  return ledger;
}

LimitProbeResult limit_condition_probe(const CostFunction& cost,
                                       const Dyadic& epsilon,
                                       std::uint64_t max_index,
                                       std::uint64_t max_stage) {
  if (epsilon.is_zero()) {
    throw InvariantError("epsilon must be positive");
  }
  LimitProbeResult result;
  result.epsilon = epsilon;
  result.max_index = max_index;
  result.max_stage = max_stage;
  for (std::uint64_t x = 0; x <= max_index; ++x) {
    Dyadic sup;
    for (std::uint64_t s = 0; s <= max_stage; ++s) {
      const Dyadic value = cost.eval(x, s);
      if (value > sup) sup = value;
    }
    if (sup <= epsilon) {
      result.index = x;
      result.sup_at_index = sup;
      return result;
    }
  }
  return result;
}

std::uint64_t benignity_count(const CostFunction& cost, std::uint64_t k,
                              std::uint64_t horizon) {
  const Dyadic threshold = Dyadic::pow2(-static_cast<std::int64_t>(k));
  std::uint64_t count = 0;
  std::uint64_t left = 0;
  for (std::uint64_t s = 1; s <= horizon; ++s) {
    if (cost.eval(left, s) >= threshold) {
      ++count;
      left = s;
    }
  }
  return count;
}

CostFunction parse_cost_spec(const std::string& spec) {
  const auto load = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) {
      throw ParseError("cannot open '" + path + "'");
    }
    return in;
  };
  const auto machine_from = [&](const std::string& path) {
    auto in = load(path);
    auto machine =
        parse_machine(in, std::filesystem::path(path).stem().string());
    const auto verdict = machine.validate();
    if (!verdict.ok()) {
      throw InvariantError("machine '" + machine.identifier() +
                           "' is invalid: " +
                           std::string(to_token(verdict.status)));
    }
    return machine;
  };
  if (spec == "exp") {
    return CostFunction::exp_decay();
  }
  if (spec.rfind("omega:", 0) == 0) {
    return CostFunction::omega(machine_from(spec.substr(6)));
  }
  if (spec.rfind("stdk:", 0) == 0) {
    return CostFunction::standard_k(machine_from(spec.substr(5)));
  }
  if (spec.rfind("table:", 0) == 0) {
    auto in = load(spec.substr(6));
    return CostFunction::table(parse_cost_table(in));
  }
  throw ParseError("unknown cost spec '" + spec +
                   "' (expected omega:<file>, stdk:<file>, exp, or "
                   "table:<file>)");
}

std::vector<std::vector<Dyadic>> parse_cost_table(std::istream& in) {
  const auto lines = detail::content_lines(in);
  if (lines.empty()) {
    throw ParseError("empty cost table file");
  }
  const auto header = detail::split_fields(lines.front());
  if (header.size() != 3 || header[0] != "cost") {
    throw ParseError("cost table header must be 'cost X S'");
  }
  std::uint64_t max_index = 0;
  std::uint64_t max_stage = 0;
  const auto parse_dim = [](const std::string& field, std::uint64_t& out) {
    const auto res =
        std::from_chars(field.data(), field.data() + field.size(), out);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size() ||
        out == 0) {
      throw ParseError("bad cost table dimension '" + field + "'");
    }
  };
  parse_dim(header[1], max_index);
  parse_dim(header[2], max_stage);
  if (lines.size() != 1 + max_index) {
    throw ParseError("cost table body has " +
                     std::to_string(lines.size() - 1) +
                     " rows, header promises " + std::to_string(max_index));
  }
  std::vector<std::vector<Dyadic>> cells(max_index);
  for (std::uint64_t x = 0; x < max_index; ++x) {
    const auto fields = detail::split_fields(lines[1 + x]);
    if (fields.size() != max_stage) {
      throw ParseError("cost table row " + std::to_string(x) + " has " +
                       std::to_string(fields.size()) + " entries, expected " +
                       std::to_string(max_stage));
    }
    cells[x].reserve(max_stage);
    for (const auto& field : fields) {
      cells[x].push_back(Dyadic::parse(field));
    }
  }
  return cells;
}

std::vector<std::vector<Dyadic>> parse_cost_table(const std::string& text) {
  std::istringstream in(text);
  return parse_cost_table(in);
}

std::string serialize_cost_table(
    const std::vector<std::vector<Dyadic>>& cells) {
  std::string out = "cost " + std::to_string(cells.size()) + " " +
                    std::to_string(cells.empty() ? 0 : cells.front().size()) +
                    "\n";
  for (const auto& row : cells) {
    for (std::size_t s = 0; s < row.size(); ++s) {
      if (s > 0) out += ' ';
      out += row[s].str();
    }
    out += '\n';
  }
  return out;
}

}  // namespace deltalab
