// Command-line front end: analyze a system file, reproduce the benchmark
// tables, run the actuator-placement search, generate string systems, and
// export bound reports / region plot scripts.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "lqrdecay/catalog.hpp"
#include "lqrdecay/report.hpp"

namespace {

using lqrdecay::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBoundViolation = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json parse_json(const std::string& path) {
  try {
    return nlohmann::json::parse(slurp(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw lqrdecay::PreconditionError(std::string("malformed JSON: ") +
                                      e.what());
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string opt_num(const std::optional<double>& v) {
  return v ? num(*v) : "-";
}

int cmd_analyze(const std::string& input, bool allow_non_skew,
                const std::string& out_path) {
  const lqrdecay::SystemSpec sys =
      lqrdecay::system_from_json(parse_json(input));
  const lqrdecay::AnalysisReport rep = lqrdecay::analyze(sys, allow_non_skew);
  emit(lqrdecay::report_to_json(rep).dump(2), out_path);
  return rep.bound_violation ? kExitBoundViolation : kExitOk;
}

int cmd_bounds(const std::string& input, const std::string& plot_path,
               const std::string& out_path) {
  const lqrdecay::SystemSpec sys =
      lqrdecay::system_from_json(parse_json(input));
  const lqrdecay::SpectralData data =
      lqrdecay::decompose(sys.A, sys.B);
  const lqrdecay::BoundReport rep = lqrdecay::summarize(data);
  if (!plot_path.empty()) {
    emit(lqrdecay::plot_script(lqrdecay::exclusion_geometry(data)), plot_path);
  }
  emit(lqrdecay::bound_report_to_json(rep).dump(2), out_path);
  return kExitOk;
}

int cmd_string(const std::string& input, bool closed_form,
               const std::string& out_path) {
  const lqrdecay::StringConfig cfg =
      lqrdecay::string_config_from_json(parse_json(input));
  lqrdecay::validate(cfg);
  const lqrdecay::StringSystem ss = lqrdecay::build_string(cfg);
  ordered_json j = lqrdecay::system_to_json(ss.sys);
  if (closed_form) {
    ordered_json cf;
    cf["lambdas"] = ss.closed_form.lambdas;
    cf["b_norms"] = ss.closed_form.b_norms;
    cf["B_norm"] = ss.closed_form.B_norm;
    j["closed_form"] = std::move(cf);
  }
  emit(j.dump(2), out_path);
  return kExitOk;
}

int cmd_search(const std::string& input, bool brute, bool verify,
               std::size_t batch, const std::string& csv_path,
               const std::string& out_path) {
  const lqrdecay::StringConfig cfg =
      lqrdecay::string_config_from_json(parse_json(input));
  lqrdecay::SearchOptions opts;
  opts.batch = batch;
  const lqrdecay::SearchResult res =
      brute ? lqrdecay::brute_force_search(cfg, cfg.m, opts)
            : lqrdecay::pruned_search(cfg, cfg.m, opts);
  if (verify && !brute) {
    const lqrdecay::SearchResult oracle =
        lqrdecay::brute_force_search(cfg, cfg.m, opts);
    const bool same_gamma =
        std::abs(oracle.gamma_star - res.gamma_star) <= 1e-12;
    const bool same_set = oracle.best_configs == res.best_configs;
    std::cerr << (same_gamma && same_set
                      ? "verify: pruned search matches brute force\n"
                      : "verify: MISMATCH against brute force\n");
    if (!(same_gamma && same_set)) return kExitError;
  }
  if (!csv_path.empty()) {
    emit(lqrdecay::search_log_csv(res), csv_path);
  }
  emit(lqrdecay::search_result_to_json(res).dump(2), out_path);
  return kExitOk;
}

int reproduce_table1(const std::string& out_path) {
  std::string csv = "row,a,b,X_norm,gamma_decay,Gamma_minus,Gamma_plus,ell_est,rho\n";
  int row = 0;
  for (const auto [a, b] : lqrdecay::catalog::four_mode_rows()) {
    const lqrdecay::SystemSpec sys = lqrdecay::catalog::four_mode_system(a, b);
    const lqrdecay::CareSolution care = lqrdecay::solve_care(sys);
    const lqrdecay::SpectralData data = lqrdecay::decompose(sys.A, sys.B);
    const lqrdecay::BoundReport rep = lqrdecay::summarize(data);
    csv += std::to_string(++row) + ',' + num(a) + ',' + num(b) + ',' +
           num(care.X_norm()) + ',' +
           num(lqrdecay::gamma_decay(care.closed_loop_eigs)) + ',' +
           opt_num(rep.Gamma_minus) + ',' + opt_num(rep.Gamma_plus) + ',' +
           num(rep.ell_est) + ',' + opt_num(rep.rho) + '\n';
  }
  emit(csv, out_path);
  return kExitOk;
}

int reproduce_table2(std::size_t max_m, const std::string& out_path) {
  std::string csv = "m,gamma_star,lqr_solved,total_configs,percent_computed\n";
  for (std::size_t m = 1; m <= max_m; ++m) {
    const lqrdecay::SearchResult res =
        lqrdecay::pruned_search(lqrdecay::catalog::string_benchmark(m), m);
    csv += std::to_string(m) + ',' + num(res.gamma_star) + ',' +
           std::to_string(res.lqr_solved) + ',' +
           std::to_string(res.total_configs) + ',' +
           num(100.0 * static_cast<double>(res.lqr_solved) /
               static_cast<double>(res.total_configs)) +
           '\n';
  }
  emit(csv, out_path);
  return kExitOk;
}

int reproduce_remark2(const std::string& out_path) {
  const lqrdecay::SystemSpec sys = lqrdecay::catalog::uniform_ladder_system();
  std::string csv = "tau,gamma_decay,X_tau_norm,X0_tau_norm\n";
  for (const double tau : {0.0, 1.0, 2.0}) {
    const lqrdecay::ShiftedLqrResult r = lqrdecay::shifted_lqr(sys, tau);
    csv += num(tau) + ',' + num(r.gamma_decay) + ',' + num(r.X_tau_norm) +
           ',' + num(r.X0_tau_norm) + '\n';
  }
  emit(csv, out_path);
  return kExitOk;
}

int reproduce_figure1(int row, const std::string& out_path) {
  const auto rows = lqrdecay::catalog::four_mode_rows();
  if (row < 1 || static_cast<std::size_t>(row) > rows.size()) {
    throw lqrdecay::PreconditionError("figure1: row must be 1..7");
  }
  const auto [a, b] = rows[static_cast<std::size_t>(row - 1)];
  const lqrdecay::SystemSpec sys = lqrdecay::catalog::four_mode_system(a, b);
  const lqrdecay::CareSolution care = lqrdecay::solve_care(sys);
  const lqrdecay::SpectralData data = lqrdecay::decompose(sys.A, sys.B);
  emit(lqrdecay::plot_script(lqrdecay::exclusion_geometry(data),
                             care.closed_loop_eigs),
       out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "LQR decay-rate analysis for skew-Hermitian systems: Riccati solver, "
      "closed-loop spectrum bounds, and bound-pruned actuator search"};
  app.require_subcommand(1);

  std::string input, out_path, plot_path, csv_path, target;
  bool allow_non_skew = false, closed_form = false;
  bool brute = false, pruned = false, verify = false;
  std::size_t max_m = 2, batch = 1;
  int fig_row = 1;

  auto* analyze = app.add_subcommand("analyze", "full report for a system file");
  analyze->add_option("input", input, "system JSON file")->required();
  analyze->add_flag("--allow-non-skew", allow_non_skew,
                    "bypass the skew-Hermitian gate (demonstrations)");
  analyze->add_option("-o,--output", out_path, "write JSON here");

  auto* reproduce =
      app.add_subcommand("reproduce", "regenerate a benchmark table or figure");
  reproduce->add_option("target", target, "table1 | table2 | remark2 | figure1")
      ->required();
  reproduce->add_option("--max-m", max_m, "largest control count for table2");
  reproduce->add_option("--row", fig_row, "four-mode row for figure1 (1..7)");
  reproduce->add_option("-o,--output", out_path, "write output here");

  auto* search = app.add_subcommand("search", "actuator configuration search");
  search->add_option("config", input, "string config JSON file")->required();
  search->add_flag("--brute", brute, "exhaustive search");
  search->add_flag("--pruned", pruned, "bound-pruned search (default)");
  search->add_flag("--verify", verify, "cross-check pruned against brute force");
  search->add_option("--batch", batch, "concurrent CARE solves per round");
  search->add_option("--csv", csv_path, "write the evaluation log as CSV");
  search->add_option("-o,--output", out_path, "write JSON here");

  auto* string_cmd =
      app.add_subcommand("string", "build a mass-loaded string system");
  string_cmd->add_option("config", input, "string config JSON file")->required();
  string_cmd->add_flag("--closed-form", closed_form,
                       "append the closed-form spectral summary");
  string_cmd->add_option("-o,--output", out_path, "write JSON here");

  auto* bounds =
      app.add_subcommand("bounds", "bound report without solving the LQR");
  bounds->add_option("input", input, "system JSON file")->required();
  bounds->add_option("--plot", plot_path, "write the region plot script here");
  bounds->add_option("-o,--output", out_path, "write JSON here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return cmd_analyze(input, allow_non_skew, out_path);
    if (*reproduce) {
      if (target == "table1") return reproduce_table1(out_path);
      if (target == "table2") return reproduce_table2(max_m, out_path);
      if (target == "remark2") return reproduce_remark2(out_path);
      if (target == "figure1") return reproduce_figure1(fig_row, out_path);
      throw lqrdecay::PreconditionError(
          "reproduce: unknown target '" + target +
          "' (expected table1|table2|remark2|figure1)");
    }
    if (*search) {
      if (brute && pruned) {
        throw lqrdecay::PreconditionError(
            "search: choose one of --brute / --pruned");
      }
      return cmd_search(input, brute, verify, batch, csv_path, out_path);
    }
    if (*string_cmd) return cmd_string(input, closed_form, out_path);
    if (*bounds) return cmd_bounds(input, plot_path, out_path);
  } catch (const lqrdecay::PreconditionError& e) {
    const std::string what = e.what();
    if (what.rfind("malformed JSON", 0) == 0) {
      std::cerr << what << '\n';
    } else if (what.find("mismatch") != std::string::npos ||
               what.find("row count") != std::string::npos) {
      std::cerr << "dimension mismatch: " << what << '\n';
    } else {
      std::cerr << "precondition failed: " << what << '\n';
    }
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}
