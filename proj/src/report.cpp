#include "deltalab/report.hpp"

#include "deltalab/errors.hpp"

#include <json.hpp>

namespace deltalab {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

const char* bool_token(bool b) { return b ? "true" : "false"; }

std::string opt_cell(const std::optional<std::uint64_t>& v) {
  return v ? std::to_string(*v) : std::string();
}

ordered_json opt_json(const std::optional<std::uint64_t>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json trace_json(const ApproximationTrace& trace) {
  ordered_json j;
  j["stages"] = trace.stages();
  j["width"] = trace.width();
  j["kind"] = std::string(to_token(trace.kind()));
  j["rows"] = trace.rows();
  return j;
}

ordered_json ledger_json(const ObedienceLedger& ledger) {
  ordered_json j;
  j["charges"] = ordered_json::array();
  for (const auto& charge : ledger.charges) {
    ordered_json c;
    c["stage"] = charge.stage;
    c["position"] = charge.position;
    c["charge"] = charge.charge.str();
    j["charges"].push_back(std::move(c));
  }
  j["total"] = ledger.total.str();
  return j;
}

std::string ledger_lines(const ObedienceLedger& ledger) {
  std::string out;
  for (const auto& charge : ledger.charges) {
    out += "charge " + std::to_string(charge.stage) + " " +
           std::to_string(charge.position) + " " + charge.charge.str() + "\n";
  }
  out += "total " + ledger.total.str() + "\n";
  return out;
}

}  // namespace

ReportFormat report_format_from_token(std::string_view token) {
  if (token == "text") return ReportFormat::text;
  if (token == "csv") return ReportFormat::csv;
  if (token == "json") return ReportFormat::json;
  throw ParseError("unknown format '" + std::string(token) +
                   "' (expected text, csv, or json)");
}

std::string render_dyadic(const Dyadic& value, ReportFormat format) {
  switch (format) {
    case ReportFormat::text:
      return value.str() + "\n";
    case ReportFormat::csv:
      return "value\n" + value.str() + "\n";
    case ReportFormat::json: {
      ordered_json j;
      j["value"] = value.str();
      return dump(j);
    }
  }
  return {};
}

std::string render_count(std::uint64_t value, ReportFormat format) {
  switch (format) {
    case ReportFormat::text:
      return std::to_string(value) + "\n";
    case ReportFormat::csv:
      return "value\n" + std::to_string(value) + "\n";
    case ReportFormat::json: {
      ordered_json j;
      j["value"] = value;
      return dump(j);
    }
  }
  return {};
}

std::string render_length(const std::optional<std::uint64_t>& value,
                          ReportFormat format) {
  switch (format) {
    case ReportFormat::text:
      return (value ? std::to_string(*value) : std::string("undefined")) +
             "\n";
    case ReportFormat::csv:
      return "value\n" + opt_cell(value) + "\n";
    case ReportFormat::json: {
      ordered_json j;
      j["value"] = opt_json(value);
      return dump(j);
    }
  }
  return {};
}

std::string render_trace(const ApproximationTrace& trace,
                         ReportFormat format) {
  switch (format) {
    case ReportFormat::text:
      return serialize_trace(trace);
    case ReportFormat::csv: {
      std::string out = "stage,row\n";
      for (std::size_t s = 0; s < trace.stages(); ++s) {
        out += std::to_string(s) + "," + trace.row(s) + "\n";
      }
      return out;
    }
    case ReportFormat::json:
      return dump(trace_json(trace));
  }
  return {};
}

std::string render_change_profile(const ChangeProfile& profile,
                                  ReportFormat format) {
  switch (format) {
    case ReportFormat::text: {
      std::string out;
      for (std::size_t n = 1; n <= profile.width(); ++n) {
        out += "n=" + std::to_string(n) +
               " count=" + std::to_string(profile.at(n)) + "\n";
      }
      return out;
    }
    case ReportFormat::csv: {
      std::string out = "n,count\n";
      for (std::size_t n = 1; n <= profile.width(); ++n) {
        out += std::to_string(n) + "," + std::to_string(profile.at(n)) + "\n";
      }
      return out;
    }
    case ReportFormat::json: {
      ordered_json j;
      j["counts"] = ordered_json::array();
      for (std::size_t n = 1; n <= profile.width(); ++n) {
        ordered_json row;
        row["n"] = n;
        row["count"] = profile.at(n);
        j["counts"].push_back(std::move(row));
      }
      return dump(j);
    }
  }
  return {};
}

std::string render_g_change(const GChangeVerdict& verdict,
                            ReportFormat format) {
  switch (format) {
    case ReportFormat::text:
      if (verdict.holds) return "holds\n";
      return "violated n=" + std::to_string(verdict.violating_n) +
             " count=" + std::to_string(verdict.count) +
             " bound=" + std::to_string(verdict.bound) + "\n";
    case ReportFormat::csv: {
      std::string out = "holds,n,count,bound\n";
      out += bool_token(verdict.holds);
      if (verdict.holds) {
        out += ",,,\n";
      } else {
        out += "," + std::to_string(verdict.violating_n) + "," +
               std::to_string(verdict.count) + "," +
               std::to_string(verdict.bound) + "\n";
      }
      return out;
    }
    case ReportFormat::json: {
      ordered_json j;
      j["holds"] = verdict.holds;
      if (!verdict.holds) {
        j["n"] = verdict.violating_n;
        j["count"] = verdict.count;
        j["bound"] = verdict.bound;
      }
      return dump(j);
    }
  }
  return {};
}

std::string render_kind_verdict(const KindVerdict& verdict, TraceKind declared,
                                ReportFormat format) {
  const std::string kind(to_token(declared));
  switch (format) {
    case ReportFormat::text:
      if (verdict.holds) return "valid kind=" + kind + "\n";
      return "violated kind=" + kind +
             " stage=" + std::to_string(verdict.stage) +
             " position=" + std::to_string(verdict.position) + "\n";
    case ReportFormat::csv: {
      std::string out = "holds,kind,stage,position\n";
      out += bool_token(verdict.holds);
      out += "," + kind;
      if (verdict.holds) {
        out += ",,\n";
      } else {
        out += "," + std::to_string(verdict.stage) + "," +
               std::to_string(verdict.position) + "\n";
      }
      return out;
    }
    case ReportFormat::json: {
      ordered_json j;
      j["holds"] = verdict.holds;
      j["kind"] = kind;
      if (!verdict.holds) {
        j["stage"] = verdict.stage;
        j["position"] = verdict.position;
      }
      return dump(j);
    }
  }
  return {};
}

std::string render_machine_verdict(const MachineVerdict& verdict,
                                   ReportFormat format) {
  const std::string status(to_token(verdict.status));
  switch (format) {
    case ReportFormat::text: {
      std::string out = "status=" + status +
                        " kraft=" + verdict.kraft_sum.str();
      if (!verdict.program_a.empty() || !verdict.program_b.empty()) {
        out += " program=" +
               (verdict.program_a.empty() ? "-" : verdict.program_a);
        if (!verdict.program_b.empty()) {
          out += " extension=" + verdict.program_b;
        }
      }
      return out + "\n";
    }
    case ReportFormat::csv:
      return "status,kraft,program_a,program_b\n" + status + "," +
             verdict.kraft_sum.str() + "," + verdict.program_a + "," +
             verdict.program_b + "\n";
    case ReportFormat::json: {
      ordered_json j;
      j["status"] = status;
      j["kraft"] = verdict.kraft_sum.str();
      if (!verdict.program_a.empty()) j["program_a"] = verdict.program_a;
      if (!verdict.program_b.empty()) j["program_b"] = verdict.program_b;
      return dump(j);
    }
  }
  return {};
}

std::string render_left_ce_bound(const LeftCeBoundReport& report,
                                 ReportFormat format) {
  switch (format) {
    case ReportFormat::text: {
      std::string out = "k=" + std::to_string(report.k) + " t=" +
                        std::to_string(report.stabilization_stage) + "\n";
      for (const auto& check : report.checks) {
        out += "n=" + std::to_string(check.n) +
               " changes=" + std::to_string(check.changes) +
               " bound=" + check.bound.str() +
               " within=" + bool_token(check.within) + "\n";
      }
      out += "all_within=";
      out += bool_token(report.all_within);
      out += "\n";
      return out;
    }
    case ReportFormat::csv: {
      std::string out = "k,t,n,changes,bound,within\n";
      for (const auto& check : report.checks) {
        out += std::to_string(report.k) + "," +
               std::to_string(report.stabilization_stage) + "," +
               std::to_string(check.n) + "," +
               std::to_string(check.changes) + "," + check.bound.str() +
               "," + bool_token(check.within) + "\n";
      }
      return out;
    }
    case ReportFormat::json: {
      ordered_json j;
      j["k"] = report.k;
      j["stabilization_stage"] = report.stabilization_stage;
      j["all_within"] = report.all_within;
      j["checks"] = ordered_json::array();
      for (const auto& check : report.checks) {
        ordered_json c;
        c["n"] = check.n;
        c["changes"] = check.changes;
        c["bound"] = check.bound.str();
        c["within"] = check.within;
        j["checks"].push_back(std::move(c));
      }
      return dump(j);
    }
  }
  return {};
}

std::string render_change_lower(const ChangeLowerReport& report,
                                ReportFormat format) {
  switch (format) {
    case ReportFormat::text: {
      std::string out;
      for (const auto& row : report.rows) {
        out += "n=" + std::to_string(row.n) +
               " count=" + std::to_string(row.count) +
               " bound=" + row.bound.str() +
               " respected=" + bool_token(row.respected) + "\n";
      }
      return out;
    }
    case ReportFormat::csv: {
      std::string out = "n,count,bound,respected\n";
      for (const auto& row : report.rows) {
        out += std::to_string(row.n) + "," + std::to_string(row.count) +
               "," + row.bound.str() + "," + bool_token(row.respected) +
               "\n";
      }
      return out;
    }
    case ReportFormat::json: {
      ordered_json j;
      j["rows"] = ordered_json::array();
      for (const auto& row : report.rows) {
        ordered_json r;
        r["n"] = row.n;
        r["count"] = row.count;
        r["bound"] = row.bound.str();
        r["respected"] = row.respected;
        j["rows"].push_back(std::move(r));
      }
      return dump(j);
    }
  }
  return {};
}

std::string render_monotone(const MonotoneVerdict& verdict,
                            ReportFormat format) {
  const char* axis = verdict.in_stage_axis ? "stage" : "index";
  switch (format) {
    case ReportFormat::text:
      if (verdict.holds) return "monotone\n";
      return std::string("violated axis=") + axis +
             " x=" + std::to_string(verdict.x) +
             " s=" + std::to_string(verdict.s) +
             " value=" + verdict.value.str() +
             " next=" + verdict.next_value.str() + "\n";
    case ReportFormat::csv: {
      std::string out = "holds,axis,x,s,value,next_value\n";
      out += bool_token(verdict.holds);
      if (verdict.holds) {
        out += ",,,,,\n";
      } else {
        out += std::string(",") + axis + "," + std::to_string(verdict.x) +
               "," + std::to_string(verdict.s) + "," + verdict.value.str() +
               "," + verdict.next_value.str() + "\n";
      }
      return out;
    }
    case ReportFormat::json: {
      ordered_json j;
      j["holds"] = verdict.holds;
      if (!verdict.holds) {
        j["axis"] = axis;
        j["x"] = verdict.x;
        j["s"] = verdict.s;
        j["value"] = verdict.value.str();
        j["next_value"] = verdict.next_value.str();
      }
      return dump(j);
    }
  }
  return {};
}

std::string render_ledger(const ObedienceLedger& ledger, ReportFormat format) {
  switch (format) {
    case ReportFormat::text:
      return ledger_lines(ledger);
    case ReportFormat::csv: {
      std::string out = "stage,position,charge\n";
      for (const auto& charge : ledger.charges) {
        out += std::to_string(charge.stage) + "," +
               std::to_string(charge.position) + "," + charge.charge.str() +
               "\n";
      }
      return out;
    }
    case ReportFormat::json:
      return dump(ledger_json(ledger));
  }
  return {};
}

std::string render_limit_probe(const LimitProbeResult& result,
                               ReportFormat format) {
  switch (format) {
    case ReportFormat::text: {
      std::string out = "epsilon=" + result.epsilon.str() +
                        " max_index=" + std::to_string(result.max_index) +
                        " max_stage=" + std::to_string(result.max_stage) +
                        "\n";
      if (result.index) {
        out += "index=" + std::to_string(*result.index) +
               " sup=" + result.sup_at_index.str() + "\n";
      } else {
        out += "index=undefined\n";
      }
      return out;
    }
    case ReportFormat::csv: {
      std::string out = "epsilon,max_index,max_stage,index,sup\n";
      out += result.epsilon.str() + "," + std::to_string(result.max_index) +
             "," + std::to_string(result.max_stage) + ",";
      if (result.index) {
        out += std::to_string(*result.index) + "," +
               result.sup_at_index.str();
      } else {
        out += ",";
      }
      return out + "\n";
    }
    case ReportFormat::json: {
      ordered_json j;
      j["epsilon"] = result.epsilon.str();
      j["max_index"] = result.max_index;
      j["max_stage"] = result.max_stage;
      j["index"] = opt_json(result.index);
      j["sup"] = result.index ? ordered_json(result.sup_at_index.str())
                              : ordered_json(nullptr);
      return dump(j);
    }
  }
  return {};
}

std::string render_construction(const ConstructionReport& report,
                                ReportFormat format) {
  switch (format) {
    case ReportFormat::text:
      return serialize_construction_report(report);
    case ReportFormat::csv: {
      // Requirements table only; trace and ledger have their own commands.
      std::string out = "e,met,element,stage\n";
      for (std::size_t e = 0; e < report.requirements.size(); ++e) {
        const auto& status = report.requirements[e];
        out += std::to_string(e) + ",";
        out += bool_token(status.met);
        if (status.met) {
          out += "," + std::to_string(status.element) + "," +
                 std::to_string(status.stage) + "\n";
        } else {
          out += ",,\n";
        }
      }
      return out;
    }
    case ReportFormat::json: {
      ordered_json j;
      j["trace"] = trace_json(report.trace);
      j["requirements"] = ordered_json::array();
      for (std::size_t e = 0; e < report.requirements.size(); ++e) {
        const auto& status = report.requirements[e];
        ordered_json r;
        r["e"] = e;
        r["met"] = status.met;
        if (status.met) {
          r["element"] = status.element;
          r["stage"] = status.stage;
        }
        j["requirements"].push_back(std::move(r));
      }
      j["ledger"] = ledger_json(report.ledger);
      return dump(j);
    }
  }
  return {};
}

std::string render_solovay(const SolovayTest& test, ReportFormat format) {
  switch (format) {
    case ReportFormat::text:
      return serialize_solovay(test);
    case ReportFormat::csv: {
      // Strings only; the exact weight lives in the text and json forms.
      std::string out = "sigma\n";
      for (const auto& sigma : test.strings()) {
        out += (sigma.empty() ? std::string("-") : sigma) + "\n";
      }
      return out;
    }
    case ReportFormat::json: {
      ordered_json j;
      j["strings"] = test.strings();
      j["weight"] = test.weight().str();
      return dump(j);
    }
  }
  return {};
}

std::string render_deficiency(const DeficiencyReport& report,
                              ReportFormat format) {
  const auto opt_int_cell = [](const std::optional<std::int64_t>& v) {
    return v ? std::to_string(*v) : std::string();
  };
  switch (format) {
    case ReportFormat::text: {
      std::string out;
      for (const auto& row : report.rows) {
        out += "n=" + std::to_string(row.n) + " k_prefix=" +
               (row.k_prefix ? std::to_string(*row.k_prefix) : "undefined") +
               " k_natural=" +
               (row.k_natural ? std::to_string(*row.k_natural)
                              : "undefined") +
               " deficiency=" +
               (row.deficiency ? std::to_string(*row.deficiency)
                               : "undefined") +
               "\n";
      }
      out += "max_deficiency=" +
             (report.max_deficiency ? std::to_string(*report.max_deficiency)
                                    : "undefined") +
             "\n";
      return out;
    }
    case ReportFormat::csv: {
      std::string out = "n,k_prefix,k_natural,deficiency\n";
      for (const auto& row : report.rows) {
        out += std::to_string(row.n) + "," + opt_cell(row.k_prefix) + "," +
               opt_cell(row.k_natural) + "," + opt_int_cell(row.deficiency) +
               "\n";
      }
      return out;
    }
    case ReportFormat::json: {
      ordered_json j;
      j["rows"] = ordered_json::array();
      for (const auto& row : report.rows) {
        ordered_json r;
        r["n"] = row.n;
        r["k_prefix"] = opt_json(row.k_prefix);
        r["k_natural"] = opt_json(row.k_natural);
        r["deficiency"] = row.deficiency
                              ? ordered_json(*row.deficiency)
                              : ordered_json(nullptr);
        j["rows"].push_back(std::move(r));
      }
      j["max_deficiency"] = report.max_deficiency
                                ? ordered_json(*report.max_deficiency)
                                : ordered_json(nullptr);
      return dump(j);
    }
  }
  return {};
}

}  // namespace deltalab
