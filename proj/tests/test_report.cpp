#include "deltalab/report.hpp"

#include "deltalab/errors.hpp"

#include <doctest.h>
#include <json.hpp>

#include <string>
#include <vector>

using namespace deltalab;

TEST_CASE("format tokens") {
  CHECK(report_format_from_token("text") == ReportFormat::text);
  CHECK(report_format_from_token("csv") == ReportFormat::csv);
  CHECK(report_format_from_token("json") == ReportFormat::json);
  CHECK_THROWS_AS((void)report_format_from_token("yaml"), ParseError);
}

TEST_CASE("dyadics render as p over a power of two in every format") {
  const Dyadic v = Dyadic::parse("3/2^2");
  CHECK(render_dyadic(v, ReportFormat::text) == "3/2^2\n");
  CHECK(render_dyadic(v, ReportFormat::csv) == "value\n3/2^2\n");
  const auto j = nlohmann::json::parse(render_dyadic(v, ReportFormat::json));
  CHECK(j["value"] == "3/2^2");
}

TEST_CASE("counts and optional lengths render plainly") {
  CHECK(render_count(7, ReportFormat::text) == "7\n");
  CHECK(render_count(7, ReportFormat::csv) == "value\n7\n");
  CHECK(render_length(std::nullopt, ReportFormat::text) == "undefined\n");
  CHECK(render_length(std::nullopt, ReportFormat::csv) == "value\n\n");
  CHECK(render_length(3, ReportFormat::text) == "3\n");
  const auto j =
      nlohmann::json::parse(render_length(std::nullopt, ReportFormat::json));
  CHECK(j["value"].is_null());
}

TEST_CASE("change profiles use the documented n,count column order") {
  const ChangeProfile profile{{1, 2, 2}};
  CHECK(render_change_profile(profile, ReportFormat::csv) ==
        "n,count\n1,1\n2,2\n3,2\n");
  CHECK(render_change_profile(profile, ReportFormat::text) ==
        "n=1 count=1\nn=2 count=2\nn=3 count=2\n");
  const auto j = nlohmann::json::parse(
      render_change_profile(profile, ReportFormat::json));
  CHECK(j["counts"].size() == 3);
  CHECK(j["counts"][2]["n"] == 3);
  CHECK(j["counts"][2]["count"] == 2);
}

TEST_CASE("an empty ledger renders as a header-only csv") {
  const ObedienceLedger empty;
  CHECK(render_ledger(empty, ReportFormat::csv) == "stage,position,charge\n");
  CHECK(render_ledger(empty, ReportFormat::text) == "total 0/2^0\n");

  ObedienceLedger ledger;
  ledger.charges.push_back({1, 0, Dyadic(1)});
  ledger.charges.push_back({2, 1, Dyadic::pow2(-1)});
  ledger.total = Dyadic::parse("3/2^1");
  CHECK(render_ledger(ledger, ReportFormat::csv) ==
        "stage,position,charge\n1,0,1/2^0\n2,1,1/2^1\n");
  CHECK(render_ledger(ledger, ReportFormat::text) ==
        "charge 1 0 1/2^0\ncharge 2 1 1/2^1\ntotal 3/2^1\n");
  const auto j =
      nlohmann::json::parse(render_ledger(ledger, ReportFormat::json));
  CHECK(j["total"] == "3/2^1");
  CHECK(j["charges"][0]["charge"] == "1/2^0");
}

TEST_CASE("trace text output is the canonical file format") {
  const ApproximationTrace trace({"00", "01"}, TraceKind::left_ce);
  const auto text = render_trace(trace, ReportFormat::text);
  CHECK(text == "trace 2 2 leftce\n00\n01\n");
  const auto back = parse_trace(text);
  CHECK(back.rows() == trace.rows());
  CHECK(render_trace(trace, ReportFormat::csv) == "stage,row\n0,00\n1,01\n");
}

TEST_CASE("verdict renderers expose witnesses only on failure") {
  CHECK(render_g_change(GChangeVerdict{}, ReportFormat::csv) ==
        "holds,n,count,bound\ntrue,,,\n");
  CHECK(render_g_change(GChangeVerdict{false, 2, 5, 3}, ReportFormat::csv) ==
        "holds,n,count,bound\nfalse,2,5,3\n");

  CHECK(render_kind_verdict(KindVerdict{}, TraceKind::ce,
                            ReportFormat::text) == "valid kind=ce\n");
  CHECK(render_kind_verdict(KindVerdict{false, 3, 1}, TraceKind::left_ce,
                            ReportFormat::text) ==
        "violated kind=leftce stage=3 position=1\n");

  MonotoneVerdict bad;
  bad.holds = false;
  bad.in_stage_axis = false;
  bad.x = 1;
  bad.s = 2;
  bad.value = Dyadic::pow2(-1);
  bad.next_value = Dyadic(1);
  CHECK(render_monotone(bad, ReportFormat::csv) ==
        "holds,axis,x,s,value,next_value\nfalse,index,1,2,1/2^1,1/2^0\n");
  CHECK(render_monotone(MonotoneVerdict{}, ReportFormat::text) ==
        "monotone\n");
}

TEST_CASE("machine verdicts carry the exact kraft sum") {
  MachineVerdict ok;
  ok.kraft_sum = Dyadic::parse("7/2^3");
  CHECK(render_machine_verdict(ok, ReportFormat::text) ==
        "status=valid kraft=7/2^3\n");
  MachineVerdict bad;
  bad.status = MachineVerdict::Status::prefix_violation;
  bad.program_a = "0";
  bad.program_b = "01";
  bad.kraft_sum = Dyadic::parse("3/2^2");
  CHECK(render_machine_verdict(bad, ReportFormat::csv) ==
        "status,kraft,program_a,program_b\nprefix-violation,3/2^2,0,01\n");
}

TEST_CASE("solovay and construction text output re-parses") {
  const SolovayTest test({"1", "11"});
  const auto text = render_solovay(test, ReportFormat::text);
  const auto back = parse_solovay(text);
  CHECK(back.strings() == test.strings());
  CHECK(render_solovay(test, ReportFormat::csv) == "sigma\n1\n11\n");

  const auto report = prompt_simple(CostFunction::exp_decay(),
                                    CEFamily({{{5, 3}}, {{1, 2}}}), 6, 8);
  const auto body = render_construction(report, ReportFormat::text);
  const auto parsed = parse_construction_report(body);
  CHECK(parsed.trace.rows() == report.trace.rows());
  CHECK(render_construction(report, ReportFormat::csv) ==
        "e,met,element,stage\n0,true,5,3\n1,false,,\n");
  const auto j =
      nlohmann::json::parse(render_construction(report, ReportFormat::json));
  CHECK(j["requirements"][0]["element"] == 5);
  CHECK(j["ledger"]["total"] == "1/2^5");
}

TEST_CASE("limit probe and deficiency render undefined cells as empty") {
  LimitProbeResult found;
  found.epsilon = Dyadic::pow2(-3);
  found.max_index = 10;
  found.max_stage = 7;
  found.index = 3;
  found.sup_at_index = Dyadic::pow2(-3);
  CHECK(render_limit_probe(found, ReportFormat::csv) ==
        "epsilon,max_index,max_stage,index,sup\n1/2^3,10,7,3,1/2^3\n");

  LimitProbeResult missing;
  missing.epsilon = Dyadic::pow2(-1);
  missing.max_index = 1;
  missing.max_stage = 1;
  CHECK(render_limit_probe(missing, ReportFormat::csv) ==
        "epsilon,max_index,max_stage,index,sup\n1/2^1,1,1,,\n");
  CHECK(render_limit_probe(missing, ReportFormat::text) ==
        "epsilon=1/2^1 max_index=1 max_stage=1\nindex=undefined\n");

  DeficiencyReport report;
  report.rows.push_back({0, std::nullopt, std::nullopt, std::nullopt});
  report.rows.push_back({1, 3, 2, 1});
  report.max_deficiency = 1;
  CHECK(render_deficiency(report, ReportFormat::csv) ==
        "n,k_prefix,k_natural,deficiency\n0,,,\n1,3,2,1\n");
  const auto j =
      nlohmann::json::parse(render_deficiency(report, ReportFormat::json));
  CHECK(j["rows"][0]["k_prefix"].is_null());
  CHECK(j["rows"][1]["deficiency"] == 1);
  CHECK(j["max_deficiency"] == 1);
}

TEST_CASE("left-ce bound and change-lower tables are self-contained csv") {
  LeftCeBoundReport report;
  report.k = 1;
  report.stabilization_stage = 2;
  report.checks.push_back({3, 3, Dyadic(6), true});
  report.all_within = true;
  CHECK(render_left_ce_bound(report, ReportFormat::csv) ==
        "k,t,n,changes,bound,within\n1,2,3,3,6/2^0,true\n");
  CHECK(render_left_ce_bound(report, ReportFormat::text) ==
        "k=1 t=2\nn=3 changes=3 bound=6/2^0 within=true\nall_within=true\n");

  ChangeLowerReport lower;
  lower.rows.push_back({1, 1, BigInt(2), true});
  lower.rows.push_back({2, 5, BigInt(4), false});
  CHECK(render_change_lower(lower, ReportFormat::csv) ==
        "n,count,bound,respected\n1,1,2,true\n2,5,4,false\n");
}

TEST_CASE("rendering is deterministic") {
  const ApproximationTrace trace({"000", "100", "110", "110"},
                                 TraceKind::general);
  for (const auto format :
       {ReportFormat::text, ReportFormat::csv, ReportFormat::json}) {
    CHECK(render_trace(trace, format) == render_trace(trace, format));
    CHECK(render_change_profile(change_profile(trace), format) ==
          render_change_profile(change_profile(trace), format));
  }
}
