#pragma once

#include "deltalab/construct.hpp"
#include "deltalab/cost.hpp"
#include "deltalab/dyadic.hpp"
#include "deltalab/machine.hpp"
#include "deltalab/trace.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace deltalab {

enum class ReportFormat { text, csv, json };

ReportFormat report_format_from_token(std::string_view token);

// Every renderer is deterministic: identical values yield identical bytes.
// Dyadic rationals are always rendered as p/2^q, never as decimals. CSV
// cells never need quoting (integers, dyadics, bit strings, fixed tokens);
// optional values that are absent become empty CSV cells and JSON nulls.
// Text output for traces, tests, and construction reports is the canonical
// file format, so it re-parses.
std::string render_dyadic(const Dyadic& value, ReportFormat format);
std::string render_count(std::uint64_t value, ReportFormat format);
std::string render_length(const std::optional<std::uint64_t>& value,
                          ReportFormat format);
std::string render_trace(const ApproximationTrace& trace, ReportFormat format);
std::string render_change_profile(const ChangeProfile& profile,
                                  ReportFormat format);
std::string render_g_change(const GChangeVerdict& verdict,
                            ReportFormat format);
std::string render_kind_verdict(const KindVerdict& verdict, TraceKind declared,
                                ReportFormat format);
std::string render_machine_verdict(const MachineVerdict& verdict,
                                   ReportFormat format);
std::string render_left_ce_bound(const LeftCeBoundReport& report,
                                 ReportFormat format);
std::string render_change_lower(const ChangeLowerReport& report,
                                ReportFormat format);
std::string render_monotone(const MonotoneVerdict& verdict,
                            ReportFormat format);
std::string render_ledger(const ObedienceLedger& ledger, ReportFormat format);
std::string render_limit_probe(const LimitProbeResult& result,
                               ReportFormat format);
std::string render_construction(const ConstructionReport& report,
                                ReportFormat format);
std::string render_solovay(const SolovayTest& test, ReportFormat format);
std::string render_deficiency(const DeficiencyReport& report,
                              ReportFormat format);

}  // namespace deltalab
