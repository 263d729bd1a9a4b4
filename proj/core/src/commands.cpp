#include "adiabat/commands.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "adiabat/diagnostics.hpp"
#include "adiabat/errors.hpp"
#include "adiabat/evolve.hpp"
#include "adiabat/scaling.hpp"
#include "adiabat/spectral.hpp"

namespace adiabat {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& path, const std::string& why) {
  throw SpecError("config field '" + path + "': " + why);
}

const json& need(const json& j, const std::string& path,
                 const std::string& key) {
  if (!j.is_object() || !j.contains(key)) {
    bad_field(path.empty() ? key : path + "." + key, "missing");
  }
  return j.at(key);
}

double need_number(const json& j, const std::string& path) {
  if (!j.is_number()) bad_field(path, "expected a number");
  return j.get<double>();
}

double need_positive(const json& j, const std::string& path) {
  const double v = need_number(j, path);
  if (!(v > 0.0)) bad_field(path, "must be positive");
  return v;
}

Complex parse_complex(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) {
    bad_field(path, "expected a [re, im] pair");
  }
  return {need_number(j.at(0), path + "[0]"),
          need_number(j.at(1), path + "[1]")};
}

Matrix2 parse_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) {
    bad_field(path, "expected a 2x2 row-major matrix");
  }
  Matrix2 m;
  for (int r = 0; r < 2; ++r) {
    const json& row = j.at(r);
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != 2) {
      bad_field(rp, "expected a row of two [re, im] pairs");
    }
    for (int c = 0; c < 2; ++c) {
      m(r, c) = parse_complex(row.at(c), rp + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

HamiltonianSpec parse_family(const json& j) {
  const json& fam = need(j, "", "hamiltonian");
  const json& fam_kind = need(fam, "hamiltonian", "family");
  if (!fam_kind.is_string()) bad_field("hamiltonian.family", "expected a string");
  const std::string kind = fam_kind.get<std::string>();
  try {
    if (kind == "rotating") {
      return HamiltonianSpec::rotating(
          need_positive(need(fam, "hamiltonian", "omega0"),
                        "hamiltonian.omega0"),
          need_positive(need(fam, "hamiltonian", "omega"),
                        "hamiltonian.omega"));
    }
    if (kind == "linear_interp") {
      return HamiltonianSpec::linear_interp(
          parse_matrix(need(fam, "hamiltonian", "h0"), "hamiltonian.h0"),
          parse_matrix(need(fam, "hamiltonian", "h1"), "hamiltonian.h1"));
    }
    if (kind == "tabulated") {
      const json& sg = need(fam, "hamiltonian", "s_grid");
      const json& hs = need(fam, "hamiltonian", "h_samples");
      if (!sg.is_array()) bad_field("hamiltonian.s_grid", "expected an array");
      if (!hs.is_array()) {
        bad_field("hamiltonian.h_samples", "expected an array");
      }
      std::vector<double> s;
      std::vector<Matrix2> h;
      for (std::size_t i = 0; i < sg.size(); ++i) {
        s.push_back(need_number(sg.at(i), "hamiltonian.s_grid[" +
                                              std::to_string(i) + "]"));
      }
      for (std::size_t i = 0; i < hs.size(); ++i) {
        h.push_back(parse_matrix(
            hs.at(i), "hamiltonian.h_samples[" + std::to_string(i) + "]"));
      }
      return HamiltonianSpec::tabulated(std::move(s), std::move(h));
    }
  } catch (const SpecError& e) {
    // Factory-level validation failures, reported against the config block.
    throw SpecError("config field 'hamiltonian': " + std::string(e.what()));
  }
  bad_field("hamiltonian.family",
            "unknown family '" + kind +
                "' (expected rotating | linear_interp | tabulated)");
}

void write_or_die(std::ofstream& out, const std::string& path,
                  const std::string& text) {
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

class CsvFile {
 public:
  explicit CsvFile(const std::string& path)
      : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_.is_open()) {
      throw IoError("cannot open '" + path + "' for writing");
    }
  }

  void row(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) line += ',';
      line += cells[i];
    }
    line += '\n';
    write_or_die(out_, path_, line);
  }

  void close() {
    out_.flush();
    if (!out_) throw IoError("flush failed for '" + path_ + "'");
    out_.close();
  }

 private:
  std::string path_;
  std::ofstream out_;
};

FrameOptions frame_options(const RunConfig& cfg) {
  FrameOptions opts;
  opts.gap_min = cfg.gap_min;
  return opts;
}

std::vector<double> parse_t_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      while (used < item.size() &&
             std::isspace(static_cast<unsigned char>(item[used]))) {
        ++used;
      }
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw SpecError("--T entry '" + item + "' is not a number");
    }
  }
  if (out.empty()) throw SpecError("--T list is empty");
  return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SpecError(std::string("config is not valid JSON: ") + e.what());
  }

  RunConfig cfg;
  if (j.contains("hbar")) cfg.hbar = need_positive(j.at("hbar"), "hbar");
  cfg.family = parse_family(j).with_hbar(cfg.hbar);

  const json& sched = need(j, "", "schedule");
  const json& kind = need(sched, "schedule", "kind");
  if (!kind.is_string()) bad_field("schedule.kind", "expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "unscaled") {
    cfg.schedule = RunConfig::Schedule::unscaled;
    cfg.horizon =
        need_positive(need(sched, "schedule", "t_final"), "schedule.t_final");
  } else if (k == "scaled") {
    cfg.schedule = RunConfig::Schedule::scaled;
    cfg.horizon = need_positive(need(sched, "schedule", "T"), "schedule.T");
  } else {
    bad_field("schedule.kind", "expected \"unscaled\" or \"scaled\"");
  }
  const json& steps = need(sched, "schedule", "steps");
  if (!steps.is_number_unsigned() || steps.get<std::uint64_t>() < 2 ||
      steps.get<std::uint64_t>() % 2 != 0) {
    bad_field("schedule.steps", "expected an even integer >= 2");
  }
  cfg.steps = steps.get<std::size_t>();

  const json& init = need(j, "", "initial_state");
  if (init.is_string()) {
    const std::string tok = init.get<std::string>();
    if (tok == "eigenstate:1") {
      cfg.state_is_level = true;
      cfg.level = 1;
    } else if (tok == "eigenstate:2") {
      cfg.state_is_level = true;
      cfg.level = 2;
    } else {
      bad_field("initial_state",
                "unknown token '" + tok +
                    "' (expected eigenstate:1, eigenstate:2, or a pair)");
    }
  } else if (init.is_array() && init.size() == 2) {
    cfg.state_is_level = false;
    cfg.psi0 << parse_complex(init.at(0), "initial_state[0]"),
        parse_complex(init.at(1), "initial_state[1]");
  } else {
    bad_field("initial_state", "expected a token or two [re, im] pairs");
  }

  if (j.contains("gap_min")) {
    cfg.gap_min = need_positive(j.at("gap_min"), "gap_min");
  }
  const json& outp = need(j, "", "output");
  if (!outp.is_string() || outp.get<std::string>().empty()) {
    bad_field("output", "expected a non-empty path");
  }
  cfg.output = outp.get<std::string>();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw IoError("cannot read config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed for config '" + path + "'");
  return parse_config_text(buf.str());
}

HamiltonianSpec scheduled_spec(const RunConfig& cfg) {
  if (!cfg.family) throw SpecError("config has no Hamiltonian family");
  if (cfg.schedule == RunConfig::Schedule::scaled) {
    return cfg.family->scaled(cfg.horizon);
  }
  return *cfg.family;
}

TimeGrid config_grid(const RunConfig& cfg) {
  return TimeGrid(cfg.horizon, cfg.steps);
}

Vector2 resolve_initial_state(const RunConfig& cfg,
                              const HamiltonianSpec& spec) {
  if (cfg.state_is_level) {
    const Eigensystem2 e = eig2(at_time(spec, 0.0), cfg.gap_min);
    return e.vectors[cfg.level - 1];
  }
  const double n = cfg.psi0.norm();
  if (std::abs(n - 1.0) > 1e-6) {
    throw SpecError(
        "config field 'initial_state': norm " + std::to_string(n) +
        " is too far from 1 to renormalize");
  }
  return cfg.psi0 / n;
}

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void cmd_simulate(const RunConfig& cfg) {
  const HamiltonianSpec spec = scheduled_spec(cfg);
  const TimeGrid grid = config_grid(cfg);
  const Vector2 psi0 = resolve_initial_state(cfg, spec);

  const EigenFrame frame = build_frame(spec, grid, frame_options(cfg));
  const UnitaryTrace ud = propagate_deo(spec, grid);
  const UnitaryTrace ua = build_aeo(frame);
  const ErrorNormTrace err = error_norm(ud, ua, frame, psi0);
  const CoefficientTrace ct = coefficients(ud, frame, psi0);

  CsvFile csv(cfg.output);
  csv.row({"t", "err_norm", "c1_re", "c1_im", "c2_re", "c2_im", "pop1",
           "pop2"});
  for (std::size_t k = 0; k < ud.size(); ++k) {
    const Complex c1 = ct.c[0][k];
    const Complex c2 = ct.c[1][k];
    csv.row({csv_number(grid.point(k)), csv_number(err.direct[k]),
             csv_number(c1.real()), csv_number(c1.imag()),
             csv_number(c2.real()), csv_number(c2.imag()),
             csv_number(std::norm(c1)), csv_number(std::norm(c2))});
  }
  csv.close();
}

void cmd_diagnose(const RunConfig& cfg) {
  const HamiltonianSpec spec = scheduled_spec(cfg);
  const TimeGrid grid = config_grid(cfg);

  const EigenFrame frame = build_frame(spec, grid, frame_options(cfg));
  const UnitaryTrace ud = propagate_deo(spec, grid);
  const DiagnosticsReport rep = build_diagnostics(ud, frame);

  CsvFile csv(cfg.output);
  csv.row({"t", "ovl1_re", "ovl1_im", "mag1", "mag2", "barA", "barB", "barC",
           "barSum", "xx_mag", "simplified_ratio"});
  for (std::size_t k = 0; k < ud.size(); ++k) {
    const Complex ovl = rep.first_kind[0][k];
    csv.row({csv_number(grid.point(k)), csv_number(ovl.real()),
             csv_number(ovl.imag()), csv_number(rep.second_kind[0][k]),
             csv_number(rep.second_kind[1][k]), csv_number(rep.bar_a[k]),
             csv_number(rep.bar_b[k]), csv_number(rep.bar_c[k]),
             csv_number(rep.bar_a[k] + rep.bar_b[k] + rep.bar_c[k]),
             csv_number(std::abs(rep.xx[k])), csv_number(rep.simplified[k])});
  }
  csv.close();
}

void cmd_bound(const RunConfig& cfg, double delta, std::ostream& report) {
  if (cfg.schedule != RunConfig::Schedule::scaled) {
    throw SpecError("bound needs a scaled schedule (kind = \"scaled\")");
  }
  const HamiltonianSpec spec = scheduled_spec(cfg);
  const BoundReport rep = min_runtime_bound(spec, delta);

  report << "tMin = " << csv_number(rep.t_min) << '\n'
         << "errorCoeff = " << csv_number(rep.error_coeff) << '\n'
         << "gapMin = " << csv_number(rep.gap_min) << '\n'
         << "maxDH = " << csv_number(rep.max_dh) << '\n'
         << "maxD2H = " << csv_number(rep.max_d2h) << '\n';

  CsvFile csv(cfg.output);
  csv.row({"s", "gap", "f_abs", "bracket"});
  for (std::size_t k = 0; k < rep.profile.s.size(); ++k) {
    csv.row({csv_number(rep.profile.s[k]), csv_number(rep.profile.gap[k]),
             csv_number(rep.profile.f_abs[k]),
             csv_number(rep.profile.bracket[k])});
  }
  csv.close();
}

void cmd_sweep(const RunConfig& cfg, const std::vector<double>& t_list) {
  if (cfg.schedule != RunConfig::Schedule::scaled) {
    throw SpecError("sweep needs a scaled schedule (kind = \"scaled\")");
  }
  const HamiltonianSpec spec = scheduled_spec(cfg);
  const Vector2 psi0 = resolve_initial_state(cfg, spec);
  // Keep dt constant across the sweep: the configured schedule fixes the
  // steps-per-unit-time resolution.
  const double steps_per_unit =
      static_cast<double>(cfg.steps) / cfg.horizon;
  const auto rows = sweep_error_vs_T(spec, t_list, psi0, steps_per_unit);

  CsvFile csv(cfg.output);
  csv.row({"T", "max_err", "bound_over_T"});
  for (const auto& r : rows) {
    csv.row({csv_number(r.T), csv_number(r.max_err),
             csv_number(r.bound_over_T)});
  }
  csv.close();
}

namespace {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return 4;
  if (dynamic_cast<const SpecError*>(&e) ||
      dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const InvalidDelta*>(&e)) {
    return 2;
  }
  return 3;  // numeric failures: degeneracy, grid mismatch, ...
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Two-level adiabatic evolution toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  double delta = 0.0;
  std::string t_csv;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON run configuration")
        ->required();
  };
  CLI::App* sim = app.add_subcommand(
      "simulate", "Propagate and write the state/error trace");
  add_config(sim);
  CLI::App* diag = app.add_subcommand(
      "diagnose", "Evaluate adiabatic-approximation conditions and bounds");
  add_config(diag);
  CLI::App* bound = app.add_subcommand(
      "bound", "Minimal runtime for a target error (scaled families)");
  add_config(bound);
  bound->add_option("--delta", delta, "target error amplitude")->required();
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Max error versus total time (scaled families)");
  add_config(sweep);
  sweep->add_option("--T", t_csv, "comma-separated total times")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const RunConfig cfg = load_config(config_path);
    if (sim->parsed()) {
      cmd_simulate(cfg);
    } else if (diag->parsed()) {
      cmd_diagnose(cfg);
    } else if (bound->parsed()) {
      cmd_bound(cfg, delta, std::cout);
    } else {
      cmd_sweep(cfg, parse_t_list(t_csv));
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace adiabat
