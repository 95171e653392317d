#include "atlas/cli.hpp"

#include <fstream>
#include <string>

#include "CLI11.hpp"
#include "atlas/report.hpp"
#include "atlas/verify.hpp"
#include "atlas/version.hpp"

namespace atlas {
namespace {

void print_classification(const Classification& cls, std::ostream& out) {
  out << "kind: " << fibre_kind_name(cls.kind) << "\n\n";
  out << "| zero | order | origin multiplicity | two sheets | smooth | off-origin ok |\n";
  out << "|---|---|---|---|---|---|\n";
  for (const auto& z : cls.zeros) {
    out << "| " << z.label << " | " << z.order << " | " << z.origin_multiplicity << " | "
        << (z.two_sheets_at_origin ? "yes" : "no") << " | "
        << (z.smooth_at_origin ? "yes" : "no") << " | " << (z.off_origin_ok ? "yes" : "no")
        << " |\n";
  }
}

void print_curve(const CurveInvariants& ci, std::ostream& out) {
  out << "genus of the quotient curve: " << ci.genus_quotient << "\n";
  out << "genus of the spectral curve: " << ci.genus_spectral << "\n";
  out << "prym dimension: " << ci.prym_dim << "\n";
  out << "reduced branch degree: " << ci.deg_reduced_branch << "\n";
  out << "odd / even zeros: " << ci.n_odd << " / " << ci.n_even << "\n";
}

void print_strata(const StrataTable& t, std::ostream& out) {
  out << "side: " << side_name(t.side) << "\n";
  out << "zeros:";
  for (std::size_t i = 0; i < t.zero_labels.size(); ++i)
    out << " " << t.zero_labels[i] << "(" << t.zero_orders[i] << ")";
  out << "\nprym dimension: " << t.prym_dim << "\n";
  out << "global fibration: " << (t.global_fibration ? "yes" : "no") << "\n\n";
  out << "| divisor | deg D | r | s | dim | torsor | components | covering degree |\n";
  out << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : t.rows) {
    out << "| (";
    for (std::size_t i = 0; i < r.divisor.mult.size(); ++i)
      out << (i ? "," : "") << r.divisor.mult[i];
    out << ") | " << r.deg << " | " << r.r << " | " << r.s << " | " << r.dim << " | "
        << r.torsor.base << " | " << r.torsor.components << " | " << r.torsor.covering_degree
        << " |\n";
  }
}

void print_duality(const std::vector<DualityRow>& rows, std::ostream& out) {
  out << "| divisor | deg D | (r, s) sp | (r, s) so | dim sp | dim so | hecke | abelian dual |\n";
  out << "|---|---|---|---|---|---|---|---|\n";
  bool all = true;
  for (const auto& d : rows) {
    out << "| (";
    for (std::size_t i = 0; i < d.divisor.mult.size(); ++i)
      out << (i ? "," : "") << d.divisor.mult[i];
    out << ") | " << d.deg << " | (" << d.r_sp << ", " << d.s_sp << ") | (" << d.r_so << ", "
        << d.s_so << ") | " << d.dim_sp << " | " << d.dim_so << " | "
        << (d.hecke_isomorphic ? "pass" : "fail") << " | "
        << (d.abelian_dual ? "pass" : "fail") << " |\n";
    all = all && d.hecke_isomorphic && d.abelian_dual;
  }
  out << "\nall rows pass: " << (all ? "yes" : "no") << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact stratification tables and germ/metric verification for "
               "sl(2)-type symplectic Hitchin fibres"};
  app.set_version_flag("--version", std::string("atlas ") + version());
  app.require_subcommand(1);

  std::string input, side = "sp", format = "json", output, suite;
  int m_max = 0;
  long k = 2;
  bool inject = false;

  auto with_input = [&](CLI::App* cmd) {
    cmd->add_option("-i,--input", input, "configuration file (JSON)")->required();
    return cmd;
  };

  CLI::App* cmd_classify =
      with_input(app.add_subcommand("classify", "classify the fibre over the base point"));
  CLI::App* cmd_strata =
      with_input(app.add_subcommand("strata", "stratification table for one side"));
  cmd_strata->add_option("--side", side, "sp or so")
      ->check(CLI::IsMember({"sp", "so"}))
      ->capture_default_str();
  CLI::App* cmd_duality = with_input(
      app.add_subcommand("duality", "divisor-by-divisor comparison of the two sides"));
  CLI::App* cmd_degeneration =
      with_input(app.add_subcommand("degeneration", "first-degeneration fibre model"));
  CLI::App* cmd_report = with_input(app.add_subcommand("report", "full report"));
  cmd_report->add_option("--format", format, "md, json or csv")
      ->check(CLI::IsMember({"md", "json", "csv"}))
      ->capture_default_str();
  cmd_report->add_option("-o,--output", output, "write to this file instead of stdout");

  CLI::App* cmd_verify =
      app.add_subcommand("verify", "run the exact germ and metric verification suites");
  cmd_verify->add_option("suite", suite, "local, metrics or all")
      ->required()
      ->check(CLI::IsMember({"local", "metrics", "all"}));
  cmd_verify->add_option("--m-max", m_max, "zero-order bound for the (m, l) grids")
      ->check(CLI::PositiveNumber);
  cmd_verify->add_option("--k", k, "covering degree for the pushforward checks")
      ->check(CLI::PositiveNumber);
  cmd_verify->add_flag("--inject-corruption", inject,
                       "add a fixture that is broken on purpose (tests the failure path)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_classify) {
      RunConfig rc = parse_config_file(input);
      Classification cls = classify(rc.base);
      print_classification(cls, out);
      out << "\n";
      print_curve(curve_invariants(rc.base), out);
    } else if (*cmd_strata) {
      RunConfig rc = parse_config_file(input);
      Report r = build_report(rc);
      print_strata(side == "sp" ? r.sp : r.so, out);
    } else if (*cmd_duality) {
      RunConfig rc = parse_config_file(input);
      Report r = build_report(rc);
      print_duality(r.duality, out);
    } else if (*cmd_degeneration) {
      RunConfig rc = parse_config_file(input);
      Report r = build_report(rc);
      if (!r.degeneration) throw PreconditionError(r.degeneration_note);
      out << "| zero | order | fibre factor |\n|---|---|---|\n";
      for (std::size_t i = 0; i < r.degeneration->factor_per_zero.size(); ++i)
        out << "| " << r.sp.zero_labels[i] << " | " << r.sp.zero_orders[i] << " | "
            << r.degeneration->factor_per_zero[i] << " |\n";
      out << "\nproduct: " << r.degeneration->product << "\n";
    } else if (*cmd_report) {
      RunConfig rc = parse_config_file(input);
      Report r = build_report(rc);
      std::string text = format == "md"    ? report_markdown(r)
                         : format == "csv" ? report_csv(r)
                                           : report_json(r);
      if (output.empty()) {
        out << text;
      } else {
        std::ofstream f(output, std::ios::binary);
        if (!f) throw ConfigError("", "cannot write output file: " + output);
        f << text;
      }
    } else if (*cmd_verify) {
      VerifyOptions opt;
      if (m_max > 0) opt.m_max = m_max;
      opt.k = k;
      opt.inject_corruption = inject;
      std::vector<VerifyCase> cases;
      if (suite == "local" || suite == "all") cases = verify_local(opt);
      if (suite == "metrics" || suite == "all") {
        std::vector<VerifyCase> more = verify_metrics(opt);
        cases.insert(cases.end(), more.begin(), more.end());
      }
      if (print_verify(cases, out) > 0) return 5;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const PrecisionError& e) {
    err << "precision error: " << e.what() << "\n";
    return 4;
  } catch (const PreconditionError& e) {
    err << "precondition error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace atlas
