#include "deltalab/bits.hpp"
#include "deltalab/construct.hpp"
#include "deltalab/cost.hpp"
#include "deltalab/dyadic.hpp"
#include "deltalab/errors.hpp"
#include "deltalab/machine.hpp"
#include "deltalab/report.hpp"
#include "deltalab/trace.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using namespace deltalab;

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path + "'");
  }
  return in;
}

ApproximationTrace load_trace(const std::string& path) {
  auto in = open_file(path);
  return parse_trace(in);
}

PrefixFreeMachine load_machine(const std::string& path) {
  auto in = open_file(path);
  return parse_machine(in, std::filesystem::path(path).stem().string());
}

PrefixFreeMachine load_valid_machine(const std::string& path) {
  auto machine = load_machine(path);
  const auto verdict = machine.validate();
  if (!verdict.ok()) {
    throw InvariantError("machine '" + machine.identifier() +
                         "' is invalid: " +
                         std::string(to_token(verdict.status)));
  }
  return machine;
}

CEFamily load_family(const std::string& path) {
  auto in = open_file(path);
  return parse_ce_family(in);
}

std::string bits_argument(const std::string& token, const char* what) {
  const std::string bits = token == "-" ? "" : token;
  if (!is_bit_string(bits)) {
    throw ParseError(std::string(what) + " '" + token +
                     "' is not a bit string");
  }
  return bits;
}

void emit(const std::string& bytes, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + out_path + "'");
  }
  out << bytes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "deltalab: finite-horizon experiments with computable approximations,\n"
      "prefix-free machines, cost functions, and change counting"};
  app.require_subcommand(1);

  std::string format_token = "text";
  std::string out_path;
  std::string output;
  std::string verdict_diag;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format_token,
                    "Output format: text, csv, or json")
        ->capture_default_str();
    sub->add_option("--out", out_path,
                    "Write the report to this file instead of stdout");
  };
  const auto fmt = [&] { return report_format_from_token(format_token); };

  // validate
  auto* validate =
      app.add_subcommand("validate",
                         "Check a machine file, a trace's declared kind, or "
                         "a cost function's monotonicity");
  std::string v_machine, v_trace, v_cost;
  std::uint64_t v_max_index = 0, v_max_stage = 0;
  auto* vm = validate->add_option("--machine", v_machine, "Machine file");
  auto* vt = validate->add_option("--trace", v_trace, "Trace file");
  auto* vc = validate->add_option("--cost", v_cost, "Cost spec");
  vm->excludes(vt)->excludes(vc);
  vt->excludes(vc);
  auto* vx = validate->add_option(
      "--max-index", v_max_index,
      "Monotonicity grid bound on x (table specs default to their extent)");
  auto* vs = validate->add_option(
      "--max-stage", v_max_stage,
      "Monotonicity grid bound on s (table specs default to their extent)");
  add_common(validate);
  validate->callback([&] {
    if (!v_machine.empty()) {
      const auto machine = load_machine(v_machine);
      const auto verdict = machine.validate();
      output = render_machine_verdict(verdict, fmt());
      if (!verdict.ok()) {
        verdict_diag = "machine '" + machine.identifier() + "' is invalid: " +
                       std::string(to_token(verdict.status));
      }
    } else if (!v_trace.empty()) {
      const auto trace = load_trace(v_trace);
      const auto verdict = verify_kind(trace);
      output = render_kind_verdict(verdict, trace.kind(), fmt());
      if (!verdict.holds) {
        verdict_diag = "trace is not " + std::string(to_token(trace.kind())) +
                       ": stage " + std::to_string(verdict.stage) +
                       ", position " + std::to_string(verdict.position);
      }
    } else if (!v_cost.empty()) {
      const auto cost = parse_cost_spec(v_cost);
      std::uint64_t max_index = v_max_index;
      std::uint64_t max_stage = v_max_stage;
      if (cost.kind() == CostFunction::Kind::table) {
        if (vx->count() == 0) max_index = cost.table_max_index();
        if (vs->count() == 0) max_stage = cost.table_max_stage();
      } else if (vx->count() == 0 || vs->count() == 0) {
        throw ParseError(
            "validating a non-table cost spec needs --max-index and "
            "--max-stage");
      }
      const auto verdict = validate_monotone(cost, max_index, max_stage);
      output = render_monotone(verdict, fmt());
      if (!verdict.holds) {
        verdict_diag = "cost function " + cost.describe() +
                       " is not monotone on the grid";
      }
    } else {
      throw ParseError(
          "validate needs exactly one of --machine, --trace, or --cost");
    }
  });

  // omega
  auto* omega = app.add_subcommand(
      "omega", "Exact halting measure of a machine at a stage");
  std::string o_machine;
  std::uint64_t o_stage = 0;
  omega->add_option("--machine", o_machine, "Machine file")->required();
  auto* o_stage_opt = omega->add_option(
      "--stage", o_stage, "Stage (default: the machine's last halting stage)");
  add_common(omega);
  omega->callback([&] {
    const auto machine = load_valid_machine(o_machine);
    const std::uint64_t stage =
        o_stage_opt->count() ? o_stage : machine.max_stage();
    output = render_dyadic(machine.omega_at(stage), fmt());
  });

  // ktrace
  auto* ktrace = app.add_subcommand(
      "ktrace",
      "Stagewise binary expansion of a machine's halting measure as a trace");
  std::string kt_machine;
  std::uint64_t kt_stages = 0, kt_width = 0;
  ktrace->add_option("--machine", kt_machine, "Machine file")->required();
  ktrace->add_option("--stages", kt_stages, "Number of rows S")->required();
  ktrace->add_option("--width", kt_width, "Row width N")->required();
  add_common(ktrace);
  ktrace->callback([&] {
    const auto machine = load_valid_machine(kt_machine);
    output = render_trace(machine.omega_trace(kt_stages, kt_width), fmt());
  });

  // kcomplexity
  auto* kcomplexity = app.add_subcommand(
      "kcomplexity", "Least halting program length for an output at a stage");
  std::string kc_machine, kc_output;
  std::uint64_t kc_natural = 0, kc_stage = 0;
  kcomplexity->add_option("--machine", kc_machine, "Machine file")->required();
  auto* kc_out_opt = kcomplexity->add_option(
      "--output", kc_output, "Output bit string ('-' for the empty string)");
  auto* kc_nat_opt = kcomplexity->add_option(
      "--natural", kc_natural, "Output given as a natural number");
  kc_out_opt->excludes(kc_nat_opt);
  auto* kc_stage_opt = kcomplexity->add_option(
      "--stage", kc_stage,
      "Stage (default: the machine's last halting stage)");
  add_common(kcomplexity);
  kcomplexity->callback([&] {
    const auto machine = load_valid_machine(kc_machine);
    std::string target;
    if (kc_out_opt->count()) {
      target = bits_argument(kc_output, "output");
    } else if (kc_nat_opt->count()) {
      target = encode_natural(kc_natural);
    } else {
      throw ParseError("kcomplexity needs --output or --natural");
    }
    const std::uint64_t stage =
        kc_stage_opt->count() ? kc_stage : machine.max_stage();
    output = render_length(machine.k_at(target, stage), fmt());
  });

  // changes
  auto* changes =
      app.add_subcommand("changes", "Prefix change profile of a trace");
  std::string ch_trace;
  changes->add_option("--trace", ch_trace, "Trace file")->required();
  add_common(changes);
  changes->callback([&] {
    output = render_change_profile(change_profile(load_trace(ch_trace)), fmt());
  });

  // gcheck
  auto* gcheck = app.add_subcommand(
      "gcheck", "Check a trace's change profile against a growth bound");
  std::string gc_trace, gc_bound;
  gcheck->add_option("--trace", gc_trace, "Trace file")->required();
  gcheck->add_option("--bound", gc_bound, "Growth bound file")->required();
  add_common(gcheck);
  gcheck->callback([&] {
    const auto trace = load_trace(gc_trace);
    auto in = open_file(gc_bound);
    const auto verdict = is_g_change(trace, parse_growth_bound(in));
    output = render_g_change(verdict, fmt());
    if (!verdict.holds) {
      verdict_diag = "change profile exceeds the bound at n = " +
                     std::to_string(verdict.violating_n);
    }
  });

  // leftce-bound
  auto* leftce = app.add_subcommand(
      "leftce-bound",
      "Change-count bound for a left-c.e. trace after its length-k prefix "
      "stabilizes");
  std::string lc_trace;
  std::uint64_t lc_k = 0;
  leftce->add_option("--trace", lc_trace, "Trace file")->required();
  leftce->add_option("--k", lc_k, "Prefix length k")->required();
  add_common(leftce);
  leftce->callback([&] {
    output =
        render_left_ce_bound(left_ce_change_bound(load_trace(lc_trace), lc_k),
                             fmt());
  });

  // cost-eval
  auto* cost_eval =
      app.add_subcommand("cost-eval", "Evaluate a cost function at (x, s)");
  std::string ce_cost;
  std::uint64_t ce_x = 0, ce_s = 0;
  cost_eval->add_option("--cost", ce_cost, "Cost spec")->required();
  cost_eval->add_option("--x", ce_x, "Position x")->required();
  cost_eval->add_option("--s", ce_s, "Stage s")->required();
  add_common(cost_eval);
  cost_eval->callback([&] {
    output = render_dyadic(parse_cost_spec(ce_cost).eval(ce_x, ce_s), fmt());
  });

  // obey
  auto* obey = app.add_subcommand(
      "obey", "Obedience ledger: one charge per changing stage of a trace");
  std::string ob_trace, ob_cost;
  obey->add_option("--trace", ob_trace, "Trace file")->required();
  obey->add_option("--cost", ob_cost, "Cost spec")->required();
  add_common(obey);
  obey->callback([&] {
    output = render_ledger(
        total_cost(load_trace(ob_trace), parse_cost_spec(ob_cost)), fmt());
  });

  // limit-probe
  auto* limit_probe = app.add_subcommand(
      "limit-probe",
      "Least x whose cost stays at or below epsilon over the stage horizon");
  std::string lp_cost, lp_epsilon;
  std::uint64_t lp_max_index = 0, lp_max_stage = 0;
  limit_probe->add_option("--cost", lp_cost, "Cost spec")->required();
  limit_probe->add_option("--epsilon", lp_epsilon, "Threshold, e.g. 1/2^3")
      ->required();
  limit_probe->add_option("--max-index", lp_max_index, "Largest x to try")
      ->required();
  limit_probe->add_option("--max-stage", lp_max_stage, "Largest s to scan")
      ->required();
  add_common(limit_probe);
  limit_probe->callback([&] {
    output = render_limit_probe(
        limit_condition_probe(parse_cost_spec(lp_cost),
                              Dyadic::parse(lp_epsilon), lp_max_index,
                              lp_max_stage),
        fmt());
  });

  // benign
  auto* benign = app.add_subcommand(
      "benign",
      "Maximum number of disjoint intervals with cost at least 2^-k");
  std::string be_cost;
  std::uint64_t be_k = 0, be_horizon = 0;
  benign->add_option("--cost", be_cost, "Cost spec")->required();
  benign->add_option("--k", be_k, "Threshold exponent k")->required();
  benign->add_option("--horizon", be_horizon, "Stage horizon")->required();
  add_common(benign);
  benign->callback([&] {
    output = render_count(
        benignity_count(parse_cost_spec(be_cost), be_k, be_horizon), fmt());
  });

  // construct-ps
  auto* construct_ps = app.add_subcommand(
      "construct-ps",
      "Run the prompt-simplicity construction against a cost function");
  std::string cp_cost, cp_family;
  std::uint64_t cp_stages = 0, cp_width = 0;
  construct_ps->add_option("--cost", cp_cost, "Cost spec")->required();
  construct_ps->add_option("--family", cp_family, "Enumeration family file")
      ->required();
  construct_ps->add_option("--stages", cp_stages, "Stage horizon S")
      ->required();
  construct_ps->add_option("--width", cp_width, "Position horizon N")
      ->required();
  add_common(construct_ps);
  construct_ps->callback([&] {
    output = render_construction(
        prompt_simple(parse_cost_spec(cp_cost), load_family(cp_family),
                      cp_stages, cp_width),
        fmt());
  });

  // solovay
  auto* solovay = app.add_subcommand(
      "solovay", "Extract the change test of a trace with its exact weight");
  std::string so_trace;
  solovay->add_option("--trace", so_trace, "Trace file")->required();
  add_common(solovay);
  solovay->callback([&] {
    output = render_solovay(solovay_extract(load_trace(so_trace)), fmt());
  });

  // hits
  auto* hits = app.add_subcommand(
      "hits", "Count test strings that are prefixes of a row");
  std::string hi_test, hi_row, hi_trace;
  hits->add_option("--test", hi_test, "Test file")->required();
  auto* hi_row_opt =
      hits->add_option("--row", hi_row, "Row bits ('-' for the empty row)");
  auto* hi_trace_opt = hits->add_option(
      "--trace", hi_trace, "Trace file; its final row is used");
  hi_row_opt->excludes(hi_trace_opt);
  add_common(hits);
  hits->callback([&] {
    auto in = open_file(hi_test);
    const auto test = parse_solovay(in);
    std::string row;
    if (hi_row_opt->count()) {
      row = bits_argument(hi_row, "row");
    } else if (hi_trace_opt->count()) {
      row = load_trace(hi_trace).final_row();
    } else {
      throw ParseError("hits needs --row or --trace");
    }
    output = render_count(hit_count(test, row), fmt());
  });

  // ktriv
  auto* ktriv = app.add_subcommand(
      "ktriv",
      "Deficiency table K(A|n) - K(n) under a machine's final complexity");
  std::string kv_machine, kv_row, kv_trace;
  std::uint64_t kv_nmax = 0;
  ktriv->add_option("--machine", kv_machine, "Machine file")->required();
  auto* kv_row_opt =
      ktriv->add_option("--row", kv_row, "A as bits ('-' for the empty row)");
  auto* kv_trace_opt = ktriv->add_option(
      "--trace", kv_trace, "Trace file; its final row is used as A");
  kv_row_opt->excludes(kv_trace_opt);
  auto* kv_nmax_opt = ktriv->add_option(
      "--nmax", kv_nmax, "Largest prefix length (default: all of A)");
  add_common(ktriv);
  ktriv->callback([&] {
    const auto machine = load_valid_machine(kv_machine);
    std::string row;
    if (kv_row_opt->count()) {
      row = bits_argument(kv_row, "row");
    } else if (kv_trace_opt->count()) {
      row = load_trace(kv_trace).final_row();
    } else {
      throw ParseError("ktriv needs --row or --trace");
    }
    const std::uint64_t n_max = kv_nmax_opt->count() ? kv_nmax : row.size();
    output = render_deficiency(k_trivial_deficiency(machine, row, n_max),
                               fmt());
  });

  // change-lower
  auto* change_lower = app.add_subcommand(
      "change-lower",
      "Compare a trace's change profile against floor(q(n) * 2^n)");
  std::string cl_trace, cl_q;
  change_lower->add_option("--trace", cl_trace, "Trace file")->required();
  change_lower->add_option("--q", cl_q, "Per-length dyadic table file")
      ->required();
  add_common(change_lower);
  change_lower->callback([&] {
    const auto trace = load_trace(cl_trace);
    auto in = open_file(cl_q);
    output =
        render_change_lower(change_lower_experiment(trace, parse_q_table(in)),
                            fmt());
  });

  try {
    app.parse(argc, argv);
    emit(output, out_path);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends exit 0
  } catch (const CLI::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const deltalab::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const deltalab::InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const deltalab::RangeError& e) {
    std::cerr << "range error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (!verdict_diag.empty()) {
    std::cerr << "invariant violation: " << verdict_diag << "\n";
    return 3;
  }
  return 0;
}
