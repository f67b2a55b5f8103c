#pragma once

// Deterministic random generators for property tests. Every test seeds its
// own std::mt19937_64, so failures reproduce exactly.

#include "deltalab/construct.hpp"
#include "deltalab/cost.hpp"
#include "deltalab/dyadic.hpp"
#include "deltalab/machine.hpp"
#include "deltalab/trace.hpp"

#include <set>

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace gen {

using deltalab::ApproximationTrace;
using deltalab::BigInt;
using deltalab::Computation;
using deltalab::CostFunction;
using deltalab::Dyadic;
using deltalab::PrefixFreeMachine;
using deltalab::TraceKind;

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline std::string random_bits(Rng& rng, std::size_t length) {
  std::string bits(length, '0');
  for (auto& b : bits) {
    if (rng() & 1) b = '1';
  }
  return bits;
}

inline ApproximationTrace random_general_trace(Rng& rng, std::size_t stages,
                                               std::size_t width) {
  std::vector<std::string> rows;
  rows.reserve(stages);
  for (std::size_t s = 0; s < stages; ++s) {
    rows.push_back(random_bits(rng, width));
  }
  return ApproximationTrace(std::move(rows), TraceKind::general);
}

inline ApproximationTrace random_ce_trace(Rng& rng, std::size_t stages,
                                          std::size_t width) {
  std::vector<std::string> rows;
  rows.reserve(stages);
  std::string row(width, '0');
  rows.push_back(row);
  for (std::size_t s = 1; s < stages; ++s) {
    const std::size_t additions = pick(rng, 0, 2);
    for (std::size_t i = 0; i < additions; ++i) {
      row[pick(rng, 0, width - 1)] = '1';
    }
    rows.push_back(row);
  }
  return ApproximationTrace(std::move(rows), TraceKind::ce);
}

inline std::string value_to_row(const BigInt& value, std::size_t width) {
  std::string row(width, '0');
  for (std::size_t i = 0; i < width; ++i) {
    if (bit_test(value, static_cast<unsigned>(width - 1 - i))) row[i] = '1';
  }
  return row;
}

inline ApproximationTrace random_left_ce_trace(Rng& rng, std::size_t stages,
                                               std::size_t width) {
  const BigInt cap = (BigInt(1) << width) - 1;
  BigInt value = 0;
  std::vector<std::string> rows;
  rows.reserve(stages);
  rows.push_back(value_to_row(value, width));
  for (std::size_t s = 1; s < stages; ++s) {
    if (rng() % 4 != 0) {  // stay put a quarter of the time
      value += BigInt(1) << pick(rng, 0, width - 1);
      if (value > cap) value = cap;
    }
    rows.push_back(value_to_row(value, width));
  }
  return ApproximationTrace(std::move(rows), TraceKind::left_ce);
}

inline ApproximationTrace random_trace(Rng& rng, std::size_t stages,
                                       std::size_t width) {
  switch (pick(rng, 0, 2)) {
    case 0:
      return random_general_trace(rng, stages, width);
    case 1:
      return random_ce_trace(rng, stages, width);
    default:
      return random_left_ce_trace(rng, stages, width);
  }
}

// Random prefix-free machine: candidate programs that conflict with an
// accepted one are dropped, so the result always validates. Outputs are
// biased toward encodings of small naturals so K-based sums have content.
inline PrefixFreeMachine random_machine(Rng& rng, std::size_t max_comps,
                                        std::uint64_t max_stage,
                                        std::string identifier = "random") {
  std::vector<Computation> comps;
  const std::size_t target = pick(rng, 0, max_comps);
  for (std::size_t attempt = 0; attempt < 4 * target + 8; ++attempt) {
    if (comps.size() >= target) break;
    Computation cand;
    cand.program = random_bits(rng, pick(rng, 1, 10));
    const bool conflict =
        std::any_of(comps.begin(), comps.end(), [&](const Computation& c) {
          return c.program.size() <= cand.program.size()
                     ? cand.program.compare(0, c.program.size(), c.program) ==
                           0
                     : c.program.compare(0, cand.program.size(),
                                         cand.program) == 0;
        });
    if (conflict) continue;
    cand.output = rng() % 10 < 7 ? deltalab::encode_natural(pick(rng, 0, 15))
                                 : random_bits(rng, pick(rng, 0, 6));
    cand.stage = 1 + pick(rng, 0, max_stage > 0 ? max_stage - 1 : 0);
    comps.push_back(std::move(cand));
  }
  return PrefixFreeMachine(std::move(comps), std::move(identifier));
}

inline Dyadic random_small_dyadic(Rng& rng) {
  if (rng() % 3 == 0) return Dyadic();
  return Dyadic::pow2(-static_cast<std::int64_t>(pick(rng, 0, 6)));
}

// cells[x][s] built so each row is nondecreasing in s and each column is
// nonincreasing in x: row x = row x+1 plus a nondecreasing bump.
inline std::vector<std::vector<Dyadic>> random_monotone_cells(
    Rng& rng, std::size_t max_index, std::size_t max_stage) {
  std::vector<std::vector<Dyadic>> cells(
      max_index + 1, std::vector<Dyadic>(max_stage + 1));
  for (std::size_t xr = 0; xr <= max_index; ++xr) {
    const std::size_t x = max_index - xr;
    Dyadic bump;
    for (std::size_t s = 0; s <= max_stage; ++s) {
      if (rng() % 2 == 0) bump += random_small_dyadic(rng);
      cells[x][s] = bump;
      if (x + 1 <= max_index) cells[x][s] += cells[x + 1][s];
    }
  }
  return cells;
}

// Random enumeration family with elements < width and stages in 1..stages-1,
// the window prompt_simple accepts.
inline deltalab::CEFamily random_family(Rng& rng, std::size_t max_e,
                                        std::size_t stages,
                                        std::size_t width) {
  std::vector<std::vector<deltalab::CEEntry>> enums(pick(rng, 0, max_e));
  for (std::size_t e = 0; e < enums.size(); ++e) {
    std::set<std::uint64_t> elements;
    // Entries need a stage in 1..stages-1, so a one-stage horizon gets none;
    // only width many distinct elements exist.
    const std::size_t wanted =
        stages < 2 ? 0 : std::min<std::size_t>(width, pick(rng, 0, 5));
    while (elements.size() < wanted) {
      elements.insert(pick(rng, 0, width - 1));
    }
    for (const auto element : elements) {
      enums[e].push_back({element, 1 + pick(rng, 0, stages - 2)});
    }
  }
  return deltalab::CEFamily(std::move(enums));
}

// A random cost function together with a grid on which it is total.
struct SizedCost {
  CostFunction cost;
  std::uint64_t max_index;
  std::uint64_t max_stage;
};

inline SizedCost random_cost(Rng& rng, std::uint64_t max_index,
                             std::uint64_t max_stage) {
  switch (pick(rng, 0, 3)) {
    case 0:
      return {CostFunction::exp_decay(), max_index, max_stage};
    case 1:
      return {CostFunction::omega(random_machine(rng, 24, max_stage)),
              max_index, max_stage};
    case 2:
      return {CostFunction::standard_k(random_machine(rng, 24, max_stage)),
              max_index, max_stage};
    default: {
      const std::uint64_t x_cap = std::min<std::uint64_t>(max_index, 24);
      const std::uint64_t s_cap = std::min<std::uint64_t>(max_stage, 24);
      return {CostFunction::table(random_monotone_cells(rng, x_cap, s_cap)),
              x_cap, s_cap};
    }
  }
}

}  // namespace gen
