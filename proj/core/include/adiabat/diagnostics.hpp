#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "adiabat/algebra.hpp"
#include "adiabat/evolve.hpp"
#include "adiabat/spectral.hpp"

namespace adiabat {

// Levels are named 1 (upper) and 2 (lower) throughout this interface,
// matching the CSV columns (mag1, ovl1, ...). Internally they map to
// frame slots 0 and 1.

// <m_0| U_a^dag(t_k) U_d(t_k) |m_0> per grid point: how close the true
// evolution stays to adiabatic evolution *including* the phase. The
// approximation "of the first kind" holds while this stays near 1. The
// frame only supplies the initial eigenvectors |m_0>.
std::vector<Complex> first_kind_overlap(const UnitaryTrace& ud,
                                        const UnitaryTrace& ua,
                                        const EigenFrame& frame, int m);

// |<m_{t_k}| U_d(t_k) |m_0>| per grid point: level population only, phase
// discarded. The approximation "of the second kind" holds while this stays
// near 1; it can hold long after the first kind has failed.
std::vector<double> second_kind_magnitude(const UnitaryTrace& ud,
                                          const EigenFrame& frame, int m);

// Terms of the amplitude-drift bound |c_1(t) - c_1(0)| <= barA+barB+barC,
// with r(t) = hbar*coupling12/(lambda_1 - lambda_2):
//   barA = |r(0)| + |r(t_end)|
//   barB = t_end * max_t |dr/dt|      (grid max, FD derivative)
//   barC = t_end * max_t |<2|d/dt|1> * r|,  <2|d/dt|1> = -conj(coupling12)
struct BarBounds {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double sum() const { return a + b + c; }
};

BarBounds bar_bounds(const EigenFrame& frame, std::size_t k_end);

// Trapezoid value of the phase-dressed coupling integral
//   integral_0^{t_k} <m|d/dt'|n> e^{(i/hbar)(dynphase_m - dynphase_n)} dt',
// reusing the frame's Simpson phases in the exponent. m, n in {1,2}, m != n.
Complex xx_integral(const EigenFrame& frame, int m, int n, std::size_t k_end);

// max over k <= k_end of |hbar * coupling12 / gap| — the cheap sufficient
// ratio people quote as "the adiabatic condition".
double simplified_ratio(const EigenFrame& frame, std::size_t k_end);

// Interaction-frame generator at grid point k, expressed in the initial
// eigenbasis {|1_0>, |2_0>}: zero diagonal, off-diagonal
//   -i*hbar * <m|d/dt|n> e^{(i/hbar)(dynphase_m - dynphase_n)}.
// Hermitian by the transport gauge.
Matrix2 interaction_hamiltonian(const EigenFrame& frame, std::size_t k);

// I + (1/(i*hbar)) * trapezoid integral of the interaction generator up to
// k_end. Its off-diagonal entries reproduce -xx_integral by construction.
Matrix2 dyson_first_order(const EigenFrame& frame, std::size_t k_end);

// Everything the `diagnose` command prints, accumulated in one O(N) pass
// (running maxima for the bound terms and the simplified ratio).
struct DiagnosticsReport {
  TimeGrid grid{1.0, 2};
  std::array<std::vector<Complex>, 2> first_kind;       // per level
  std::array<std::vector<double>, 2> second_kind;       // per level
  std::vector<double> bar_a, bar_b, bar_c;              // per grid point
  std::vector<Complex> xx;                              // levels (1,2)
  std::vector<double> simplified;                       // running max
};

DiagnosticsReport build_diagnostics(const UnitaryTrace& ud,
                                    const EigenFrame& frame);

}  // namespace adiabat
