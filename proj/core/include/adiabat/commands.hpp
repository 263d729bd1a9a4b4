#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "adiabat/algebra.hpp"
#include "adiabat/model.hpp"

namespace adiabat {

// Parsed run configuration (JSON file). The Hamiltonian is stored in its
// unscaled form with hbar applied; the schedule decides whether the family
// parameter is physical time or s = t/T.
struct RunConfig {
  double hbar = 1.0;
  std::optional<HamiltonianSpec> family;
  enum class Schedule { unscaled, scaled } schedule = Schedule::unscaled;
  double horizon = 0.0;  // t_final (unscaled) or T (scaled)
  std::size_t steps = 0;
  bool state_is_level = true;  // "eigenstate:1" / "eigenstate:2" tokens
  int level = 1;
  Vector2 psi0 = Vector2::Zero();
  double gap_min = 1e-8;
  std::string output;
};

// Throws SpecError with the offending field named; load_config adds
// IoError for unreadable paths.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

// The family with the schedule applied (scaled(T) when the schedule says so).
HamiltonianSpec scheduled_spec(const RunConfig& cfg);
TimeGrid config_grid(const RunConfig& cfg);
// Explicit state, renormalized if within 1e-6 of unit norm, or the
// requested initial eigenstate of the scheduled spec at t=0.
Vector2 resolve_initial_state(const RunConfig& cfg,
                              const HamiltonianSpec& spec);

// One number, 17 significant digits, '.' decimal point, locale-independent.
std::string csv_number(double v);

// Subcommand bodies. Each writes CSV to cfg.output; cmd_bound additionally
// streams a short text report (tMin, errorCoeff, gapMin, maxDH, maxD2H).
void cmd_simulate(const RunConfig& cfg);
void cmd_diagnose(const RunConfig& cfg);
void cmd_bound(const RunConfig& cfg, double delta, std::ostream& report);
void cmd_sweep(const RunConfig& cfg, const std::vector<double>& t_list);

// Full argv-level dispatch with the exit-code contract:
//   0 success; 2 config/argument validation; 3 numeric failure; 4 I/O.
int run_cli(int argc, const char* const* argv);

}  // namespace adiabat
