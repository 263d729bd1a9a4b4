#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "adiabat/algebra.hpp"

namespace adiabat {

// Whether the family parameter is physical time t or reduced time s = t/T.
enum class Form { unscaled, scaled };

// H(x) = -hbar*omega0*(sigma_x*cos(2*omega*x) + sigma_y*sin(2*omega*x)).
// A uniformly rotating transverse field with constant gap 2*hbar*omega0.
struct RotatingField {
  double omega0 = 1.0;
  double omega = 0.1;
};

// H(x) = (1-x)*h0 + x*h1 between two Hermitian endpoints.
struct LinearInterp {
  Matrix2 h0;
  Matrix2 h1;
};

// Hermitian samples on a strictly increasing knot grid covering [0, 1],
// interpolated entrywise by natural cubic splines.
struct Tabulated {
  std::vector<double> s_grid;
  std::vector<Matrix2> h_samples;
};

namespace detail {
class SplineBank;  // GSL-backed entrywise interpolation, immutable after build
}

// A two-level Hamiltonian curve plus evaluation conventions (hbar, form,
// total time for scaled families). Cheap to copy; spline data is shared.
class HamiltonianSpec {
 public:
  static HamiltonianSpec rotating(double omega0, double omega);
  static HamiltonianSpec linear_interp(const Matrix2& h0, const Matrix2& h1);
  static HamiltonianSpec tabulated(std::vector<double> s_grid,
                                   std::vector<Matrix2> h_samples);

  // Reinterpret the family parameter as s = t/T with total time T > 0.
  HamiltonianSpec scaled(double total_time) const;
  HamiltonianSpec with_hbar(double hbar) const;

  double hbar() const { return hbar_; }
  Form form() const { return form_; }
  // Total physical time; 0 for unscaled specs (no intrinsic horizon).
  double total_time() const { return total_time_; }

  bool is_rotating() const;
  bool is_linear() const;
  bool is_tabulated() const;
  const RotatingField& rotating_family() const;
  const LinearInterp& linear_family() const;
  const Tabulated& tabulated_family() const;

  // Evaluate at the family's own parameter (t if unscaled, s if scaled).
  Matrix2 family_at(double x) const;
  // First/second parameter derivatives: analytic where the family permits,
  // otherwise central finite differences with the given step.
  Matrix2 family_d1(double x, double fd_step = 1e-5) const;
  Matrix2 family_d2(double x, double fd_step = 1e-5) const;
  bool has_analytic_derivatives() const;

 private:
  HamiltonianSpec() = default;

  std::variant<RotatingField, LinearInterp, Tabulated> family_;
  std::shared_ptr<const detail::SplineBank> splines_;
  double hbar_ = 1.0;
  Form form_ = Form::unscaled;
  double total_time_ = 0.0;
};

// H at physical time t. Scaled specs map t -> s = t/total_time.
Matrix2 at_time(const HamiltonianSpec& spec, double t);
// dH/dt at physical time t (chain rule brings in 1/T for scaled specs).
Matrix2 dh_dt(const HamiltonianSpec& spec, double t, double fd_step = 1e-5);

// Uniform grid over [0, t_final]: steps+1 points, even steps >= 2.
struct TimeGrid {
  TimeGrid(double t_final, std::size_t steps);

  double t_final = 0.0;
  std::size_t steps = 0;

  double dt() const { return t_final / static_cast<double>(steps); }
  std::size_t size() const { return steps + 1; }
  double point(std::size_t k) const {
    return t_final * (static_cast<double>(k) / static_cast<double>(steps));
  }
};

}  // namespace adiabat
