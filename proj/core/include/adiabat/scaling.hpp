#pragma once

#include <cstddef>
#include <vector>

#include "adiabat/algebra.hpp"
#include "adiabat/model.hpp"
#include "adiabat/spectral.hpp"

namespace adiabat {

// Scaled-family analysis works on the reduced parameter s = t/T in [0,1].
// Frames here are built from a unit-time view of the spec so couplings and
// phases are per-unit-s quantities, independent of any particular T.

// f(s) = hbar * <1(s)|d/ds|2(s)> / (i * (lambda_1(s) - lambda_2(s))):
// the s-local amplitude that controls the 1/T error envelope.
Complex f_of_s(const EigenFrame& frame_scaled, std::size_t k);

// Runtime bound for a scaled family: how long the total time T must be so
// the worst-case deviation from adiabatic evolution stays below delta.
struct BoundReport {
  double delta = 0.0;
  double t_min = 0.0;        // smallest guaranteed-sufficient T
  double error_coeff = 0.0;  // guaranteed max error <= error_coeff / T
  double gap_min = 0.0;      // min_s (lambda_1 - lambda_2)
  double max_dh = 0.0;       // max_s ||dH/ds||
  double max_d2h = 0.0;      // max_s ||d^2H/ds^2||

  // Per-grid-point profile backing the maxima above; bracket is the
  // norm-based integrand whose max (times sqrt(2)*hbar/delta) gives t_min.
  struct Profile {
    std::vector<double> s, gap, f_abs, bracket;
  } profile;
};

// t_min = (sqrt(2)*hbar/delta) * max_s [ 2||H'||/gap^2 + 7||H'||^2/gap^3
//         + ||H''||/gap^2 ], the max taken on a dense uniform s-grid.
// error_coeff = sqrt(2) * max_s [ 2|f| + |f'| + |<2|d/ds|1>| |f| ] with f'
// by finite differences on the same grid.
BoundReport min_runtime_bound(const HamiltonianSpec& spec_scaled, double delta,
                              std::size_t s_points = 2001);

// One entry of an error-vs-runtime sweep.
struct SweepRow {
  double T = 0.0;
  double max_err = 0.0;        // max_t ||(U_d - U_a) psi0|| over [0, T]
  double bound_over_T = 0.0;   // error_coeff / T
};

// Simulates the scaled family at each T, recording the worst deviation and
// the guaranteed envelope. steps_per_unit fixes the grid resolution per
// unit time (constant dt across the sweep). Rows come back sorted by T.
std::vector<SweepRow> sweep_error_vs_T(const HamiltonianSpec& spec_scaled,
                                       std::vector<double> t_list,
                                       const Vector2& psi0,
                                       double steps_per_unit = 400.0);

}  // namespace adiabat
