#include "adiabat/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "adiabat/errors.hpp"

namespace adiabat {

Matrix2 pauli_x() {
  Matrix2 m;
  m << 0, 1, 1, 0;
  return m;
}

Matrix2 pauli_y() {
  Matrix2 m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Matrix2 pauli_z() {
  Matrix2 m;
  m << 1, 0, 0, -1;
  return m;
}

Matrix2 identity2() { return Matrix2::Identity(); }

double PauliCoeffs::radius() const {
  return std::sqrt(ax * ax + ay * ay + az * az);
}

Matrix2 PauliCoeffs::assemble() const {
  Matrix2 m;
  m << Complex(a0 + az, 0), Complex(ax, -ay), Complex(ax, ay),
      Complex(a0 - az, 0);
  return m;
}

PauliCoeffs pauli_decompose(const Matrix2& h) {
  PauliCoeffs a;
  a.a0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
  a.az = 0.5 * (h(0, 0).real() - h(1, 1).real());
  a.ax = 0.5 * (h(1, 0).real() + h(0, 1).real());
  a.ay = 0.5 * (h(1, 0).imag() - h(0, 1).imag());
  return a;
}

Matrix2 pauli_exp(const PauliCoeffs& a, double theta) {
  const double r = a.radius();
  const Complex global = std::exp(Complex(0, -a.a0 * theta));
  if (r == 0.0) {
    return global * Matrix2::Identity();
  }
  const double phi = r * theta;
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const double nx = a.ax / r;
  const double ny = a.ay / r;
  const double nz = a.az / r;
  Matrix2 m;
  m << Complex(c, -s * nz), Complex(-s * ny, -s * nx),
      Complex(s * ny, -s * nx), Complex(c, s * nz);
  return global * m;
}

double spectral_norm(const Matrix2& m) {
  if (!all_finite(m)) {
    throw SpecError("spectral_norm: non-finite matrix entry");
  }
  // Eigenvalues of A^dag A: mu^2 - tr*mu + det = 0.
  const Matrix2 g = m.adjoint() * m;
  const double tr = g(0, 0).real() + g(1, 1).real();
  const double det = (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)).real();
  const double half = 0.5 * tr;
  const double disc = std::max(0.0, half * half - det);
  const double mu = half + std::sqrt(disc);
  return std::sqrt(std::max(0.0, mu));
}

double max_abs_entry(const Matrix2& m) {
  double v = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) v = std::max(v, std::abs(m(i, j)));
  return v;
}

bool all_finite(const Matrix2& m) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

bool is_hermitian(const Matrix2& m, double tol) {
  const double defect = max_abs_entry(m - m.adjoint());
  return defect <= tol * std::max(1.0, max_abs_entry(m));
}

Matrix2 hermitize(const Matrix2& m) { return 0.5 * (m + m.adjoint()); }

double unitarity_defect(const Matrix2& u) {
  return max_abs_entry(u.adjoint() * u - Matrix2::Identity());
}

}  // namespace adiabat
