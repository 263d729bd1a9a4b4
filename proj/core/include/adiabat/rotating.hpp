#pragma once

#include <cmath>

#include "adiabat/algebra.hpp"

namespace adiabat {

// Closed forms for the uniformly rotating transverse field
//   H(t) = -hbar*omega0*(sigma_x cos 2wt + sigma_y sin 2wt),
// the one family where everything below is known exactly. Used as the
// oracle the numerical pipeline is validated against. hbar = 1 here; the
// quantities are either hbar-free or stated in natural units.
struct RotatingParams {
  double omega0 = 1.0;
  double omega = 0.1;

  double omega_bar() const { return std::hypot(omega, omega0); }
};

// Instantaneous eigenvectors in the transported gauge, level 1 (upper,
// eigenvalue +hbar*omega0) and level 2 (lower). Global phase per level is
// a constant; compare against numerics only after matching phases at t=0.
Vector2 analytic_upper_state(const RotatingParams& p, double t);
Vector2 analytic_lower_state(const RotatingParams& p, double t);

// U_a^dag(t) U_d(t) in the {|1_0>, |2_0>} basis:
//   diag:    e^{+-i*omega0*t} (cos wbar*t -+ i*(omega0/wbar) sin wbar*t)
//   offdiag: e^{+-i*omega0*t} * i*(omega/wbar) sin wbar*t
Matrix2 analytic_interaction_unitary(const RotatingParams& p, double t);

// The exactly known condition values at time t.
struct DeviationReport {
  // 1 - |<1_t|psi(t)>|^2 = (omega/wbar)^2 sin^2(wbar*t); never exceeds
  // (omega/wbar)^2 no matter how long the run.
  double second_kind_deviation = 0.0;
  // Slow phase omega^2*t/(wbar+omega0) (radians) by which the true state
  // drifts from the adiabatic phase; reaches pi at t = pi*(wbar+omega0)/w^2.
  double first_kind_phase_defect = 0.0;
  // Amplitude-drift bound omega/omega0 + omega^2*t/(2*omega0) (the
  // barA+barB+barC sum in closed form).
  double drift_bound = 0.0;
};

DeviationReport deviation_report(const RotatingParams& p, double t);

}  // namespace adiabat
