// End-to-end tests that drive the installed CLI binary. The path to the
// binary arrives through the LQRDECAY_CLI environment variable (set by the
// CTest registration).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "lqrdecay/catalog.hpp"
#include "lqrdecay/report.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "lqrdecay_cli_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  const char* cli = std::getenv("LQRDECAY_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "LQRDECAY_CLI must point at the binary");
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = std::string(cli) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(raw);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path p = work_dir() / name;
  std::ofstream(p) << content;
  return p;
}

fs::path write_system(const std::string& name,
                      const lqrdecay::SystemSpec& sys) {
  return write_file(name, lqrdecay::system_to_json(sys).dump());
}

}  // namespace

TEST_CASE("analyze: benchmark row, exit 0 and stable output") {
  const fs::path f =
      write_system("row1.json", lqrdecay::catalog::four_mode_system(15, 45));
  const RunResult r1 = run_cli("analyze " + f.string());
  CHECK(r1.exit_code == 0);
  const auto j = nlohmann::json::parse(r1.out);
  CHECK(j["care"]["gamma_decay"].get<double>() ==
        doctest::Approx(0.9999).epsilon(1e-3));
  CHECK(j["care"]["X_norm"].get<double>() ==
        doctest::Approx(1.0171).epsilon(1e-3));
  CHECK(j["bound_violation"].get<bool>() == false);

  const RunResult r2 = run_cli("analyze " + f.string());
  CHECK(r1.out == r2.out);  // byte-identical reruns
}

TEST_CASE("analyze: non-skew gate, override and exit code 2") {
  const fs::path f =
      write_system("a2.json", lqrdecay::catalog::nonskew_pair2(100.0));
  const RunResult gated = run_cli("analyze " + f.string());
  CHECK(gated.exit_code == 1);
  CHECK(gated.err.rfind("precondition failed", 0) == 0);

  const RunResult demo = run_cli("analyze " + f.string() + " --allow-non-skew");
  CHECK(demo.exit_code == 2);
  const auto j = nlohmann::json::parse(demo.out);
  bool has_flag = false;
  for (const auto& flag : j["flags"]) {
    has_flag |= flag.get<std::string>() == "upper bound ||B|| violated";
  }
  CHECK(has_flag);
}

TEST_CASE("analyze: malformed and mismatched inputs") {
  const fs::path bad = write_file("bad.json", "this is { not json");
  const RunResult r = run_cli("analyze " + bad.string());
  CHECK(r.exit_code == 1);
  CHECK(r.err.rfind("malformed JSON", 0) == 0);

  const fs::path mismatch =
      write_file("mismatch.json", R"({"A": [[[0,0]]], "B": [[1],[1]]})");
  const RunResult rm = run_cli("analyze " + mismatch.string());
  CHECK(rm.exit_code == 1);
  CHECK(rm.err.rfind("dimension mismatch", 0) == 0);
}

TEST_CASE("reproduce table1: seven rows with absent-bound dashes") {
  const RunResult r = run_cli("reproduce table1");
  CHECK(r.exit_code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "row,a,b,X_norm,gamma_decay,Gamma_minus,Gamma_plus,ell_est,rho");
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    ++rows;
    if (rows == 5 || rows == 6 || rows == 7) {
      CHECK(line.find(",-,-,") != std::string::npos);
    }
  }
  CHECK(rows == 7);
}

TEST_CASE("reproduce remark2 and figure1") {
  const RunResult r = run_cli("reproduce remark2");
  CHECK(r.exit_code == 0);
  std::size_t lines = 0;
  for (char c : r.out) lines += c == '\n';
  CHECK(lines == 4);  // header + tau in {0, 1, 2}

  const RunResult fig = run_cli("reproduce figure1 --row 1");
  CHECK(fig.exit_code == 0);
  CHECK(fig.out.find("circle ") != std::string::npos);
  CHECK(fig.out.find("segment ") != std::string::npos);
  CHECK(fig.out.find("point ") != std::string::npos);
}

TEST_CASE("string generates a system the analyzer accepts") {
  const fs::path cfg = write_file(
      "cfg.json", R"({"N":4,"m":1,"tau_over_h":10,"mass":50,"J":[2]})");
  const fs::path sysfile = work_dir() / "string_sys.json";
  const RunResult gen =
      run_cli("string " + cfg.string() + " -o " + sysfile.string());
  CHECK(gen.exit_code == 0);
  const RunResult an = run_cli("analyze " + sysfile.string());
  CHECK(an.exit_code == 0);
}

TEST_CASE("search: brute a small instance, verify the pruned one") {
  const fs::path cfg = write_file(
      "search.json", R"({"N":6,"m":2,"tau_over_h":10,"mass":50})");
  const fs::path csv = work_dir() / "log.csv";
  const RunResult brute =
      run_cli("search " + cfg.string() + " --brute --csv " + csv.string());
  CHECK(brute.exit_code == 0);
  const auto j = nlohmann::json::parse(brute.out);
  CHECK(j["total_configs"] == 15);
  CHECK(j["lqr_solved"] == 15);
  CHECK(j["gamma_star"].get<double>() > 0.0);
  CHECK(slurp(csv).rfind("config,upper,lower,gamma\n", 0) == 0);

  const RunResult verified =
      run_cli("search " + cfg.string() + " --pruned --verify");
  CHECK(verified.exit_code == 0);
  CHECK(verified.err.find("matches brute force") != std::string::npos);
}

TEST_CASE("bounds subcommand with plot export") {
  const fs::path f =
      write_system("row1b.json", lqrdecay::catalog::four_mode_system(15, 45));
  const fs::path plot = work_dir() / "region.txt";
  const RunResult r =
      run_cli("bounds " + f.string() + " --plot " + plot.string());
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["ell_est"].get<double>() == doctest::Approx(0.7040).epsilon(1e-3));
  CHECK(slurp(plot).find("circle ") != std::string::npos);
}
