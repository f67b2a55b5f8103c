#include "deltalab/trace.hpp"

#include "deltalab/bits.hpp"
#include "deltalab/errors.hpp"
#include "text_lines.hpp"

#include <charconv>
#include <optional>
#include <sstream>

namespace deltalab {

std::vector<std::optional<std::size_t>> least_changed_positions(
    const ApproximationTrace& trace) {
  std::vector<std::optional<std::size_t>> least(trace.stages());
  for (std::size_t s = 1; s < trace.stages(); ++s) {
    const std::string& prev = trace.row(s - 1);
    const std::string& cur = trace.row(s);
    for (std::size_t x = 0; x < trace.width(); ++x) {
      if (prev[x] != cur[x]) {
        least[s] = x;
        break;
      }
    }
  }
  return least;
}

namespace {

std::uint64_t parse_u64_field(std::string_view field, const char* what) {
  std::uint64_t value = 0;
  const auto res =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw ParseError(std::string("bad ") + what + " '" + std::string(field) +
                     "'");
  }
  return value;
}

}  // namespace

std::string_view to_token(TraceKind kind) {
  switch (kind) {
    case TraceKind::general:
      return "general";
    case TraceKind::ce:
      return "ce";
    case TraceKind::left_ce:
      return "leftce";
  }
  return "general";
}

TraceKind trace_kind_from_token(std::string_view token) {
  if (token == "general") return TraceKind::general;
  if (token == "ce") return TraceKind::ce;
  if (token == "leftce") return TraceKind::left_ce;
  throw ParseError("unknown trace kind '" + std::string(token) + "'");
}

ApproximationTrace::ApproximationTrace(std::vector<std::string> rows,
                                       TraceKind kind)
    : rows_(std::move(rows)), kind_(kind) {
  if (rows_.empty()) {
    throw InvariantError("trace needs at least one stage");
  }
  const std::size_t n = rows_.front().size();
  if (n == 0) {
    throw InvariantError("trace needs positive width");
  }
  for (std::size_t s = 0; s < rows_.size(); ++s) {
    if (rows_[s].size() != n) {
      throw InvariantError("trace row " + std::to_string(s) +
                           " has wrong width");
    }
    if (!is_bit_string(rows_[s])) {
      throw InvariantError("trace row " + std::to_string(s) +
                           " has a character outside {0,1}");
    }
  }
}

ChangeProfile change_profile(const ApproximationTrace& trace) {
  // counts[n] = number of stages whose least changed position is < n,
  // so accumulate a histogram of least positions and prefix-sum it.
  std::vector<std::uint64_t> hist(trace.width(), 0);
  for (const auto& pos : least_changed_positions(trace)) {
    if (pos) ++hist[*pos];
  }
  ChangeProfile profile;
  profile.counts.resize(trace.width());
  std::uint64_t running = 0;
  for (std::size_t n = 0; n < trace.width(); ++n) {
    running += hist[n];
    profile.counts[n] = running;
  }
  return profile;
}

GChangeVerdict is_g_change(const ApproximationTrace& trace,
                           const GrowthBound& bound) {
  if (bound.values.size() < trace.width()) {
    throw RangeError("growth bound covers " +
                     std::to_string(bound.values.size()) +
                     " positions but the trace has width " +
                     std::to_string(trace.width()));
  }
  const ChangeProfile profile = change_profile(trace);
  GChangeVerdict verdict;
  for (std::size_t n = 1; n <= trace.width(); ++n) {
    if (profile.at(n) > bound.at(n)) {
      verdict.holds = false;
      verdict.violating_n = n;
      verdict.count = profile.at(n);
      verdict.bound = bound.at(n);
      return verdict;
    }
  }
  return verdict;
}

KindVerdict verify_kind(const ApproximationTrace& trace) {
  KindVerdict verdict;
  switch (trace.kind()) {
    case TraceKind::general:
      return verdict;
    case TraceKind::ce:
      for (std::size_t s = 1; s < trace.stages(); ++s) {
        for (std::size_t x = 0; x < trace.width(); ++x) {
          if (trace.row(s - 1)[x] == '1' && trace.row(s)[x] == '0') {
            return KindVerdict{false, s, x};
          }
        }
      }
      return verdict;
    case TraceKind::left_ce:
      for (std::size_t s = 1; s < trace.stages(); ++s) {
        const std::string& prev = trace.row(s - 1);
        const std::string& cur = trace.row(s);
        for (std::size_t x = 0; x < trace.width(); ++x) {
          if (prev[x] != cur[x]) {
            // Equal-length rows: lexicographic order is decided at the
            // first differing bit.
            if (prev[x] == '1' && cur[x] == '0') {
              return KindVerdict{false, s, x};
            }
            break;
          }
        }
      }
      return verdict;
  }
  return verdict;
}

LeftCeBoundReport left_ce_change_bound(const ApproximationTrace& trace,
                                       std::size_t k) {
  if (trace.kind() != TraceKind::left_ce) {
    throw InvariantError("trace is not declared left-c.e.");
  }
  if (!verify_kind(trace).holds) {
    throw InvariantError("declared left-c.e. trace fails verification");
  }
  if (k < 1 || k > trace.width()) {
    throw RangeError("k must lie in 1..width");
  }

  const auto least = least_changed_positions(trace);
  std::size_t t = 0;
  for (std::size_t s = 1; s < trace.stages(); ++s) {
    if (least[s] && *least[s] < k) t = s;
  }

  const ChangeProfile profile = change_profile(trace);
  LeftCeBoundReport report;
  report.k = k;
  report.stabilization_stage = t;
  for (std::size_t n = t + 1; n <= trace.width(); ++n) {
    LeftCeBoundCheck check;
    check.n = n;
    check.changes = profile.at(n);
    check.bound = Dyadic(static_cast<std::uint64_t>(t)) +
                  Dyadic::pow2(static_cast<std::int64_t>(n) -
                               static_cast<std::int64_t>(k));
    check.within = Dyadic(check.changes) <= check.bound;
    report.all_within = report.all_within && check.within;
    report.checks.push_back(std::move(check));
  }
  return report;
}

ChangeLowerReport change_lower_experiment(const ApproximationTrace& trace,
                                          const std::vector<Dyadic>& q) {
  if (q.size() < trace.width()) {
    throw RangeError("q table covers " + std::to_string(q.size()) +
                     " positions but the trace has width " +
                     std::to_string(trace.width()));
  }
  for (std::size_t i = 0; i < trace.width(); ++i) {
    if (q[i].is_zero()) {
      throw InvariantError("q(" + std::to_string(i + 1) +
                           ") must be positive");
    }
    if (i > 0 && q[i] > q[i - 1]) {
      throw InvariantError("q must be nonincreasing; it rises at n = " +
                           std::to_string(i + 1));
    }
  }

  const ChangeProfile profile = change_profile(trace);
  ChangeLowerReport report;
  for (std::size_t n = 1; n <= trace.width(); ++n) {
    ChangeLowerRow row;
    row.n = n;
    row.count = profile.at(n);
    const Dyadic& qn = q[n - 1];
    // floor(q(n) * 2^n) with q(n) = p/2^e.
    if (n >= qn.exponent()) {
      row.bound = qn.numerator() << static_cast<unsigned>(n - qn.exponent());
    } else {
      row.bound = qn.numerator() >> static_cast<unsigned>(qn.exponent() - n);
    }
    row.respected = BigInt(row.count) <= row.bound;
    report.rows.push_back(std::move(row));
  }
  return report;
}

ApproximationTrace parse_trace(std::istream& in) {
  const auto lines = detail::content_lines(in);
  if (lines.empty()) {
    throw ParseError("empty trace file");
  }
  const auto header = detail::split_fields(lines.front());
  if (header.size() != 4 || header[0] != "trace") {
    throw ParseError("trace header must be 'trace S N kind'");
  }
  const std::uint64_t stages = parse_u64_field(header[1], "stage count");
  const std::uint64_t width = parse_u64_field(header[2], "width");
  const TraceKind kind = trace_kind_from_token(header[3]);
  if (stages == 0 || width == 0) {
    throw ParseError("trace dimensions must be positive");
  }
  if (lines.size() != 1 + stages) {
    throw ParseError("trace body has " + std::to_string(lines.size() - 1) +
                     " rows, header promises " + std::to_string(stages));
  }
  std::vector<std::string> rows;
  rows.reserve(stages);
  for (std::size_t s = 0; s < stages; ++s) {
    const std::string& row = lines[1 + s];
    if (row.size() != width || !is_bit_string(row)) {
      throw ParseError("trace row " + std::to_string(s) + " must be exactly " +
                       std::to_string(width) + " bits");
    }
    rows.push_back(row);
  }
  return ApproximationTrace(std::move(rows), kind);
}

ApproximationTrace parse_trace(const std::string& text) {
  std::istringstream in(text);
  return parse_trace(in);
}

std::string serialize_trace(const ApproximationTrace& trace) {
  std::string out = "trace " + std::to_string(trace.stages()) + " " +
                    std::to_string(trace.width()) + " " +
                    std::string(to_token(trace.kind())) + "\n";
  for (const auto& row : trace.rows()) {
    out += row;
    out += '\n';
  }
  return out;
}

GrowthBound parse_growth_bound(std::istream& in) {
  GrowthBound bound;
  for (const auto& line : detail::content_lines(in)) {
    bound.values.push_back(parse_u64_field(line, "growth bound entry"));
  }
  return bound;
}

GrowthBound parse_growth_bound(const std::string& text) {
  std::istringstream in(text);
  return parse_growth_bound(in);
}

std::vector<Dyadic> parse_q_table(std::istream& in) {
  std::vector<Dyadic> q;
  for (const auto& line : detail::content_lines(in)) {
    q.push_back(Dyadic::parse(line));
  }
  return q;
}

std::vector<Dyadic> parse_q_table(const std::string& text) {
  std::istringstream in(text);
  return parse_q_table(in);
}

}  // namespace deltalab
