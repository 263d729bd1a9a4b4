#include "adiabat/rotating.hpp"

#include <cmath>

namespace adiabat {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

Vector2 analytic_upper_state(const RotatingParams& p, double t) {
  Vector2 v;
  v << std::exp(Complex(0, -p.omega * t)) * kInvSqrt2,
      -std::exp(Complex(0, p.omega * t)) * kInvSqrt2;
  return v;
}

Vector2 analytic_lower_state(const RotatingParams& p, double t) {
  Vector2 v;
  v << std::exp(Complex(0, -p.omega * t)) * kInvSqrt2,
      std::exp(Complex(0, p.omega * t)) * kInvSqrt2;
  return v;
}

Matrix2 analytic_interaction_unitary(const RotatingParams& p, double t) {
  const double wb = p.omega_bar();
  const double c = std::cos(wb * t);
  const double s = std::sin(wb * t);
  const Complex e = std::exp(Complex(0, p.omega0 * t));
  Matrix2 u;
  u << e * Complex(c, -p.omega0 / wb * s), e * Complex(0, p.omega / wb * s),
      std::conj(e) * Complex(0, p.omega / wb * s),
      std::conj(e) * Complex(c, p.omega0 / wb * s);
  return u;
}

DeviationReport deviation_report(const RotatingParams& p, double t) {
  const double wb = p.omega_bar();
  const double s = std::sin(wb * t);
  DeviationReport r;
  r.second_kind_deviation = (p.omega * p.omega) / (wb * wb) * s * s;
  r.first_kind_phase_defect = p.omega * p.omega * t / (wb + p.omega0);
  r.drift_bound =
      p.omega / p.omega0 + p.omega * p.omega * t / (2.0 * p.omega0);
  return r;
}

}  // namespace adiabat
