#ifndef ADIABAT_ALGEBRA_HPP
#define ADIABAT_ALGEBRA_HPP

#include <Eigen/Dense>
#include <complex>

namespace adiabat {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Vector2 = Eigen::Vector2cd;

inline const Complex kI{0.0, 1.0};

Matrix2 pauli_x();
Matrix2 pauli_y();
Matrix2 pauli_z();
Matrix2 identity2();

/// Coefficients of H = a0*I + ax*sx + ay*sy + az*sz for Hermitian H.
struct PauliCoeffs {
  double a0 = 0.0;
  double ax = 0.0;
  double ay = 0.0;
  double az = 0.0;

  double radius() const;  // |a| = sqrt(ax^2 + ay^2 + az^2)
  Matrix2 assemble() const;
};

PauliCoeffs pauli_decompose(const Matrix2& h);

/// exp(-i * theta * (a0*I + a.sigma)), evaluated in closed form.
/// Exactly unitary up to rounding for any theta.
Matrix2 pauli_exp(const PauliCoeffs& a, double theta);

/// Largest singular value via the 2x2 quadratic formula on A^dag A.
/// Throws SpecError on non-finite input.
double spectral_norm(const Matrix2& m);

double max_abs_entry(const Matrix2& m);
bool all_finite(const Matrix2& m);

/// max |A - A^dag| entry <= tol * max(1, max|A|).
bool is_hermitian(const Matrix2& m, double tol = 1e-12);

/// (A + A^dag) / 2
Matrix2 hermitize(const Matrix2& m);

/// max |U^dag U - I| entry.
double unitarity_defect(const Matrix2& u);

}  // namespace adiabat

#endif  // ADIABAT_ALGEBRA_HPP
