#pragma once

#include <array>
#include <functional>
#include <vector>

#include "adiabat/algebra.hpp"
#include "adiabat/model.hpp"
#include "adiabat/spectral.hpp"

namespace adiabat {

// Unitary evolution sampled on a grid; matrices[0] is always the identity.
struct UnitaryTrace {
  TimeGrid grid{1.0, 2};
  std::vector<Matrix2> matrices;

  const Matrix2& at(std::size_t k) const { return matrices[k]; }
  std::size_t size() const { return matrices.size(); }
};

// One midpoint-exponential step: exp(-i*dt*H(t + dt/2)/hbar), evaluated in
// closed form so each factor is unitary to rounding.
Matrix2 midpoint_step(const HamiltonianSpec& spec, double t, double dt);

// Dynamical propagator U(t_k) accumulated from midpoint-exponential steps.
// Globally second-order accurate; exactly unitary per step.
UnitaryTrace propagate_deo(const HamiltonianSpec& spec, const TimeGrid& grid);

// Same stepper driven by an arbitrary Hermitian generator; used to
// cross-check interaction-frame dynamics against directly built operators.
UnitaryTrace propagate_generator(const std::function<Matrix2(double)>& h_of_t,
                                 const TimeGrid& grid, double hbar);

// Adiabatic propagator U_a(t_k) = sum_n e^{-i*dynphase_n/hbar}
// |n_t><n_0| assembled from a transported frame.
UnitaryTrace build_aeo(const EigenFrame& frame);
Matrix2 aeo_at(const FramePoint& now, const FramePoint& start, double hbar);

// Expansion coefficients of the evolving state over the transported frame,
// with the dynamical phase factored out:
//   c_n(t_k) = e^{+i*dynphase_n(t_k)/hbar} <n_{t_k}| U_d(t_k) |psi0>.
struct CoefficientTrace {
  TimeGrid grid{1.0, 2};
  std::array<std::vector<Complex>, 2> c;
};

CoefficientTrace coefficients(const UnitaryTrace& ud, const EigenFrame& frame,
                              const Vector2& psi0);

// Deviation between dynamical and adiabatic evolution of one initial state,
// computed two ways that agree analytically:
//   direct[k]        = || U_d(t_k) psi0 - U_a(t_k) psi0 ||
//   reconstructed[k] = sqrt( sum_n |c_n(t_k) - c_n(0)|^2 )
struct ErrorNormTrace {
  std::vector<double> direct;
  std::vector<double> reconstructed;
};

ErrorNormTrace error_norm(const UnitaryTrace& ud, const UnitaryTrace& ua,
                          const EigenFrame& frame, const Vector2& psi0);

// <psi(t)| B(t) |psi(t)> with psi(t) = U_d(t) psi0. Throws
// NonHermitianObservable if B(t) fails the Hermiticity tolerance or the
// expectation keeps an imaginary residual above 1e-10.
std::vector<double> expectation(const UnitaryTrace& ud, const Vector2& psi0,
                                const std::function<Matrix2(double)>& b);

// Streaming propagation summary for long horizons where storing traces is
// wasteful. Tracks running maxima and keeps only final-time objects.
struct RunSummary {
  double t_final = 0.0;
  std::size_t steps = 0;

  double max_direct_error = 0.0;
  double max_reconstructed_error = 0.0;
  double max_route_gap = 0.0;  // max |direct - reconstructed|
  double max_unitarity_defect = 0.0;

  double max_coeff_drift = 0.0;      // max_k |c_1(t_k) - c_1(0)|
  double max_drift_bound_gap = 0.0;  // max_k (drift_k - barSum_k), <= 0 if
                                     // the amplitude bound dominates
  double bar_a_end = 0.0, bar_b_end = 0.0, bar_c_end = 0.0;

  std::array<Complex, 2> overlap_end{};  // <m_0| U_a^dag U_d |m_0>
  std::array<double, 2> mag_end{};       // |<m_t| U_d |m_0>|
  // U_a^dag U_d at t_final, expressed in the initial eigenbasis
  // {|1_0>, |2_0>} (same basis as the interaction generator).
  Matrix2 interaction_end = Matrix2::Identity();
  std::array<Complex, 2> coeff_start{};
  std::array<Complex, 2> coeff_end{};
};

RunSummary run_summary(const HamiltonianSpec& spec, const TimeGrid& grid,
                       const Vector2& psi0, FrameOptions opts = {});

// Even step count targeting a fixed resolution of the fastest scale:
// roughly steps_per_unit * max(characteristic rate, 1) * t_final, clamped
// to [2, hard_cap] and rounded up to even.
std::size_t default_steps(const HamiltonianSpec& spec, double t_final,
                          double steps_per_unit = 200.0,
                          std::size_t hard_cap = 40'000'000);

}  // namespace adiabat
