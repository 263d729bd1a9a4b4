#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "adiabat/commands.hpp"
#include "adiabat/errors.hpp"
#include "testutil.hpp"

using namespace adiabat;
namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
  const fs::path p = fs::temp_directory_path() / "adiabat_test_cli";
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.is_open());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  REQUIRE(out.is_open());
  out << text;
}

int cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"adiabat"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::vector<std::vector<double>> parse_csv(const std::string& text,
                                           std::size_t cols) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  REQUIRE(std::getline(in, line));  // header
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    REQUIRE(row.size() == cols);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string rotating_config(const fs::path& out, double t_final = 10.0,
                            std::size_t steps = 2000) {
  std::ostringstream ss;
  ss << R"({
  "hamiltonian": {"family": "rotating", "omega0": 1.0, "omega": 0.1},
  "schedule": {"kind": "unscaled", "t_final": )"
     << t_final << R"(, "steps": )" << steps << R"(},
  "initial_state": "eigenstate:1",
  "output": ")"
     << out.generic_string() << R"("
})";
  return ss.str();
}

std::string ramp_config(const fs::path& out, double big_t,
                        std::size_t steps) {
  std::ostringstream ss;
  ss << R"({
  "hamiltonian": {"family": "linear_interp",
    "h0": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]],
    "h1": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]},
  "schedule": {"kind": "scaled", "T": )"
     << big_t << R"(, "steps": )" << steps << R"(},
  "initial_state": "eigenstate:1",
  "output": ")"
     << out.generic_string() << R"("
})";
  return ss.str();
}

}  // namespace

TEST_CASE("csv numbers: 17 significant digits, point decimal, round-trip") {
  CHECK(csv_number(0.5) == "0.5");
  CHECK(csv_number(0.0) == "0");
  CHECK(csv_number(1.0 / 3.0) == "0.33333333333333331");

  for (double v : {0.15, -2.5e300, 1e-17, 4503599627370497.0,
                   3.141592653589793, -0.0001}) {
    CHECK(std::stod(csv_number(v)) == v);
  }
}

TEST_CASE("config parsing: happy path and field-level errors") {
  const auto cfg =
      parse_config_text(rotating_config(work_dir() / "x.csv", 7.0, 400));
  CHECK(cfg.hbar == 1.0);
  CHECK(cfg.schedule == RunConfig::Schedule::unscaled);
  CHECK(cfg.horizon == 7.0);
  CHECK(cfg.steps == 400);
  CHECK(cfg.state_is_level);
  CHECK(cfg.level == 1);
  CHECK_FALSE(cfg.output.empty());

  auto rejects = [](const std::string& text, const std::string& needle) {
    try {
      (void)parse_config_text(text);
      FAIL_CHECK("expected SpecError naming " << needle);
    } catch (const SpecError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  rejects("{not json", "not valid JSON");
  rejects(R"({"schedule": {"kind": "unscaled", "t_final": 1, "steps": 2},
              "initial_state": "eigenstate:1", "output": "x.csv"})",
          "hamiltonian");
  rejects(R"({"hamiltonian": {"family": "warp"},
              "schedule": {"kind": "unscaled", "t_final": 1, "steps": 2},
              "initial_state": "eigenstate:1", "output": "x.csv"})",
          "family");
  rejects(R"({"hamiltonian": {"family": "linear_interp",
               "h0": [[[0,0],[1,0]]],
               "h1": [[[0,0],[1,0]],[[1,0],[0,0]]]},
              "schedule": {"kind": "unscaled", "t_final": 1, "steps": 2},
              "initial_state": "eigenstate:1", "output": "x.csv"})",
          "h0");
  rejects(R"({"hamiltonian": {"family": "rotating", "omega0": 1, "omega": 0.1},
              "schedule": {"kind": "unscaled", "t_final": 1, "steps": 3},
              "initial_state": "eigenstate:1", "output": "x.csv"})",
          "steps");
  rejects(R"({"hamiltonian": {"family": "rotating", "omega0": 1, "omega": 0.1},
              "schedule": {"kind": "unscaled", "t_final": -2, "steps": 2},
              "initial_state": "eigenstate:1", "output": "x.csv"})",
          "t_final");
  rejects(R"({"hamiltonian": {"family": "rotating", "omega0": 1, "omega": 0.1},
              "schedule": {"kind": "sometimes", "t_final": 1, "steps": 2},
              "initial_state": "eigenstate:1", "output": "x.csv"})",
          "kind");
  rejects(R"({"hamiltonian": {"family": "rotating", "omega0": 1, "omega": 0.1},
              "schedule": {"kind": "unscaled", "t_final": 1, "steps": 2},
              "initial_state": "eigenstate:3", "output": "x.csv"})",
          "initial_state");
  rejects(R"({"hamiltonian": {"family": "rotating", "omega0": 1, "omega": 0.1},
              "schedule": {"kind": "unscaled", "t_final": 1, "steps": 2},
              "initial_state": "eigenstate:1", "output": ""})",
          "output");
}

TEST_CASE("initial state resolution: eigenstate token and explicit pairs") {
  auto cfg = parse_config_text(rotating_config(work_dir() / "x.csv"));
  const auto spec = scheduled_spec(cfg);
  const Vector2 up = resolve_initial_state(cfg, spec);
  // Upper eigenstate of -omega0*sigma_x is (1,-1)/sqrt(2).
  CHECK(std::abs(up(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(up(1) + 1.0 / std::sqrt(2.0)) < 1e-15);

  cfg.state_is_level = false;
  cfg.psi0 << Complex(1.0 + 2e-7, 0.0), Complex(0.0, 0.0);
  const Vector2 fixed = resolve_initial_state(cfg, spec);
  CHECK(std::abs(fixed.norm() - 1.0) < 1e-15);

  cfg.psi0 << Complex(0.9, 0.0), Complex(0.0, 0.0);
  CHECK_THROWS_AS((void)resolve_initial_state(cfg, spec), SpecError);
}

TEST_CASE("load_config: unreadable path raises the I/O error") {
  CHECK_THROWS_AS((void)load_config("/nonexistent/dir/config.json"), IoError);
}

TEST_CASE("simulate subcommand writes the state/error trace") {
  const fs::path dir = work_dir();
  const fs::path out = dir / "sim.csv";
  const fs::path cfg = dir / "sim.json";
  spit(cfg, rotating_config(out, 10.0, 2000));

  CHECK(cli({"simulate", "--config", cfg.string()}) == 0);
  const std::string text = slurp(out);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.rfind("t,err_norm,c1_re,c1_im,c2_re,c2_im,pop1,pop2\n", 0) == 0);

  const auto rows = parse_csv(text, 8);
  REQUIRE(rows.size() == 2001);
  CHECK(rows[0][0] == 0.0);
  // At t = 0 both propagators are identity only up to rounding: the
  // adiabatic operator is assembled from eigenprojectors, so the t = 0
  // deviation and coefficients carry a few ulp of noise.
  CHECK(std::abs(rows[0][1]) < 1e-13);
  CHECK(rows[0][2] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(rows[400][0] == 2.0);
  for (std::size_t k = 0; k < rows.size(); k += 100) {
    CHECK(rows[k][6] + rows[k][7] == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Populations barely move for omega/omega0 = 0.1.
  CHECK(rows[2000][6] > 0.98);
}

TEST_CASE("diagnose subcommand writes the condition trace") {
  const fs::path dir = work_dir();
  const fs::path out = dir / "diag.csv";
  const fs::path cfg = dir / "diag.json";
  spit(cfg, rotating_config(out, 10.0, 2000));

  CHECK(cli({"diagnose", "--config", cfg.string()}) == 0);
  const std::string text = slurp(out);
  CHECK(text.rfind("t,ovl1_re,ovl1_im,mag1,mag2,barA,barB,barC,barSum,"
                   "xx_mag,simplified_ratio\n",
                   0) == 0);

  const auto rows = parse_csv(text, 11);
  REQUIRE(rows.size() == 2001);
  for (std::size_t k = 0; k < rows.size(); k += 100) {
    // mag1 = |ovl1| and the closed-form bound sum 0.1 + 0.005 t.
    CHECK(std::hypot(rows[k][1], rows[k][2]) ==
          doctest::Approx(rows[k][3]).epsilon(1e-9));
    CHECK(rows[k][8] ==
          doctest::Approx(0.1 + 0.005 * rows[k][0]).epsilon(1e-6));
    CHECK(rows[k][10] == doctest::Approx(0.05).epsilon(1e-9));
  }
}

TEST_CASE("bound subcommand: report values and profile") {
  const fs::path dir = work_dir();
  const fs::path out = dir / "bound.csv";
  const fs::path cfg = dir / "bound.json";
  spit(cfg, ramp_config(out, 10.0, 2000));

  std::ostringstream captured;
  auto* old = std::cout.rdbuf(captured.rdbuf());
  const int rc = cli({"bound", "--config", cfg.string(), "--delta", "0.01"});
  std::cout.rdbuf(old);
  CHECK(rc == 0);

  const std::string rep = captured.str();
  CHECK(rep.find("tMin = 899.99999999999") != std::string::npos);
  CHECK(rep.find("errorCoeff = ") != std::string::npos);
  CHECK(rep.find("gapMin = 1.4142135623730") != std::string::npos);
  CHECK(rep.find("maxDH = ") != std::string::npos);
  CHECK(rep.find("maxD2H = 0") != std::string::npos);

  const auto rows = parse_csv(slurp(out), 4);
  REQUIRE(rows.size() == 2001);
  CHECK(rows[0][0] == 0.0);
  CHECK(rows[2000][0] == 1.0);
  CHECK(rows[0][2] == doctest::Approx(0.25).epsilon(1e-9));

  // Same config with an unscaled schedule is a config error.
  const fs::path cfg2 = dir / "bound_bad.json";
  spit(cfg2, rotating_config(out));
  CHECK(cli({"bound", "--config", cfg2.string(), "--delta", "0.01"}) == 2);
  CHECK(cli({"bound", "--config", cfg.string(), "--delta", "-1"}) == 2);
}

TEST_CASE("sweep subcommand: rows and input validation") {
  const fs::path dir = work_dir();
  const fs::path out = dir / "sweep.csv";
  const fs::path cfg = dir / "sweep.json";
  spit(cfg, ramp_config(out, 1.0, 400));

  CHECK(cli({"sweep", "--config", cfg.string(), "--T", "20,5,10"}) == 0);
  const std::string text = slurp(out);
  CHECK(text.rfind("T,max_err,bound_over_T\n", 0) == 0);
  const auto rows = parse_csv(text, 3);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][0] == 5.0);
  CHECK(rows[1][0] == 10.0);
  CHECK(rows[2][0] == 20.0);
  for (const auto& r : rows) CHECK(r[1] <= r[2] + 1e-6);

  CHECK(cli({"sweep", "--config", cfg.string(), "--T", "10,oops"}) == 2);
  CHECK(cli({"sweep", "--config", cfg.string(), "--T", "10,-4"}) == 2);
  spit(cfg, rotating_config(out));
  CHECK(cli({"sweep", "--config", cfg.string(), "--T", "10"}) == 2);
}

TEST_CASE("exit codes: argument, numeric, and I/O failures") {
  const fs::path dir = work_dir();

  CHECK(cli({}) == 2);                       // missing subcommand
  CHECK(cli({"simulate"}) == 2);             // missing --config
  CHECK(cli({"simulate", "--config", (dir / "missing.json").string()}) == 4);
  CHECK(cli({"--help"}) == 0);

  const fs::path badcfg = dir / "bad.json";
  spit(badcfg, "{broken");
  CHECK(cli({"simulate", "--config", badcfg.string()}) == 2);

  // Level crossing at s = 1/2: numeric failure, exit 3.
  const fs::path cross = dir / "cross.json";
  spit(cross, R"({
    "hamiltonian": {"family": "linear_interp",
      "h0": [[[-1, 0], [0, 0]], [[0, 0], [1, 0]]],
      "h1": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]},
    "schedule": {"kind": "scaled", "T": 1.0, "steps": 100},
    "initial_state": "eigenstate:1",
    "output": ")" + (dir / "cross.csv").generic_string() + R"("
  })");
  CHECK(cli({"simulate", "--config", cross.string()}) == 3);

  // Unwritable output directory: I/O failure, exit 4.
  const fs::path nowrite = dir / "nowrite.json";
  spit(nowrite, rotating_config("/nonexistent/dir/out.csv", 1.0, 10));
  CHECK(cli({"simulate", "--config", nowrite.string()}) == 4);
}

TEST_CASE("reruns are byte-identical") {
  const fs::path dir = work_dir();
  const fs::path out1 = dir / "rep1.csv";
  const fs::path out2 = dir / "rep2.csv";
  const fs::path cfg1 = dir / "rep1.json";
  const fs::path cfg2 = dir / "rep2.json";
  spit(cfg1, rotating_config(out1, 5.0, 500));
  spit(cfg2, rotating_config(out2, 5.0, 500));

  REQUIRE(cli({"simulate", "--config", cfg1.string()}) == 0);
  REQUIRE(cli({"simulate", "--config", cfg2.string()}) == 0);
  CHECK(slurp(out1) == slurp(out2));

  REQUIRE(cli({"diagnose", "--config", cfg1.string()}) == 0);
  const std::string first = slurp(out1);
  REQUIRE(cli({"diagnose", "--config", cfg1.string()}) == 0);
  CHECK(slurp(out1) == first);
}
