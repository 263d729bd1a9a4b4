#include "adiabat/evolve.hpp"

#include <algorithm>
#include <cmath>

#include "adiabat/errors.hpp"

namespace adiabat {

namespace {

void require_same_grid(const TimeGrid& a, const TimeGrid& b) {
  const double scale = std::max(std::abs(a.t_final), std::abs(b.t_final));
  if (a.steps != b.steps || std::abs(a.t_final - b.t_final) > 1e-12 * scale) {
    throw GridMismatch("operands sampled on different time grids");
  }
}

void require_unit(const Vector2& psi0) {
  if (std::abs(psi0.norm() - 1.0) > 1e-12) {
    throw SpecError("initial state must be unit-normalized");
  }
}

std::array<Complex, 2> coeffs_at(const FramePoint& p, const Matrix2& u,
                                 const Vector2& psi0, double hbar) {
  const Vector2 psi = u * psi0;
  std::array<Complex, 2> c;
  for (int m = 0; m < 2; ++m) {
    c[m] = std::exp(Complex(0, p.dynphase[m] / hbar)) * p.vectors[m].dot(psi);
  }
  return c;
}

// |d(ratio)/dt| stencil shared by the streaming summary and the
// stored-frame bound terms: central in the interior, second-order
// one-sided at the grid ends.
double ratio_derivative(const Complex& prev2, const Complex& prev,
                        const Complex& cur, const Complex& next,
                        std::size_t k, std::size_t last, double h) {
  if (k == last) {
    return std::abs((3.0 * cur - 4.0 * prev + prev2) / (2.0 * h));
  }
  return std::abs((next - prev) / (2.0 * h));
}

}  // namespace

Matrix2 midpoint_step(const HamiltonianSpec& spec, double t, double dt) {
  const Matrix2 h = at_time(spec, t + 0.5 * dt);
  return pauli_exp(pauli_decompose(h), dt / spec.hbar());
}

UnitaryTrace propagate_deo(const HamiltonianSpec& spec, const TimeGrid& grid) {
  UnitaryTrace trace{grid, {}};
  trace.matrices.reserve(grid.size());
  Matrix2 u = Matrix2::Identity();
  trace.matrices.push_back(u);
  const double dt = grid.dt();
  for (std::size_t k = 0; k < grid.steps; ++k) {
    u = midpoint_step(spec, grid.point(k), dt) * u;
    trace.matrices.push_back(u);
  }
  return trace;
}

UnitaryTrace propagate_generator(const std::function<Matrix2(double)>& h_of_t,
                                 const TimeGrid& grid, double hbar) {
  UnitaryTrace trace{grid, {}};
  trace.matrices.reserve(grid.size());
  Matrix2 u = Matrix2::Identity();
  trace.matrices.push_back(u);
  const double dt = grid.dt();
  for (std::size_t k = 0; k < grid.steps; ++k) {
    const Matrix2 h = h_of_t(grid.point(k) + 0.5 * dt);
    u = pauli_exp(pauli_decompose(h), dt / hbar) * u;
    trace.matrices.push_back(u);
  }
  return trace;
}

Matrix2 aeo_at(const FramePoint& now, const FramePoint& start, double hbar) {
  Matrix2 u = Matrix2::Zero();
  for (int m = 0; m < 2; ++m) {
    const Complex phase = std::exp(Complex(0, -now.dynphase[m] / hbar));
    u += phase * now.vectors[m] * start.vectors[m].adjoint();
  }
  return u;
}

UnitaryTrace build_aeo(const EigenFrame& frame) {
  if (frame.points.empty()) throw SpecError("build_aeo: empty frame");
  UnitaryTrace trace{TimeGrid(frame.t_final, frame.points.size() - 1), {}};
  trace.matrices.reserve(frame.points.size());
  for (const auto& p : frame.points) {
    trace.matrices.push_back(aeo_at(p, frame.points.front(), frame.hbar));
  }
  return trace;
}

CoefficientTrace coefficients(const UnitaryTrace& ud, const EigenFrame& frame,
                              const Vector2& psi0) {
  require_unit(psi0);
  if (ud.size() != frame.size()) {
    throw GridMismatch("coefficients: trace and frame sizes differ");
  }
  CoefficientTrace out{ud.grid, {}};
  for (auto& ch : out.c) ch.reserve(ud.size());
  for (std::size_t k = 0; k < ud.size(); ++k) {
    const auto c = coeffs_at(frame.points[k], ud.at(k), psi0, frame.hbar);
    out.c[0].push_back(c[0]);
    out.c[1].push_back(c[1]);
  }
  return out;
}

ErrorNormTrace error_norm(const UnitaryTrace& ud, const UnitaryTrace& ua,
                          const EigenFrame& frame, const Vector2& psi0) {
  require_same_grid(ud.grid, ua.grid);
  require_unit(psi0);
  if (ud.size() != frame.size()) {
    throw GridMismatch("error_norm: trace and frame sizes differ");
  }
  const CoefficientTrace ct = coefficients(ud, frame, psi0);
  ErrorNormTrace out;
  out.direct.reserve(ud.size());
  out.reconstructed.reserve(ud.size());
  for (std::size_t k = 0; k < ud.size(); ++k) {
    out.direct.push_back((ud.at(k) * psi0 - ua.at(k) * psi0).norm());
    const Complex d1 = ct.c[0][k] - ct.c[0][0];
    const Complex d2 = ct.c[1][k] - ct.c[1][0];
    out.reconstructed.push_back(std::sqrt(std::norm(d1) + std::norm(d2)));
  }
  return out;
}

std::vector<double> expectation(const UnitaryTrace& ud, const Vector2& psi0,
                                const std::function<Matrix2(double)>& b) {
  require_unit(psi0);
  std::vector<double> out;
  out.reserve(ud.size());
  for (std::size_t k = 0; k < ud.size(); ++k) {
    const Matrix2 obs = b(ud.grid.point(k));
    if (!is_hermitian(obs)) {
      throw NonHermitianObservable("observable fails Hermiticity at t = " +
                                   std::to_string(ud.grid.point(k)));
    }
    const Vector2 psi = ud.at(k) * psi0;
    const Complex val = psi.dot(obs * psi);
    if (std::abs(val.imag()) > 1e-10) {
      throw NonHermitianObservable("expectation kept an imaginary residual");
    }
    out.push_back(val.real());
  }
  return out;
}

RunSummary run_summary(const HamiltonianSpec& spec, const TimeGrid& grid,
                       const Vector2& psi0, FrameOptions opts) {
  require_unit(psi0);
  const double hbar = spec.hbar();
  FrameCursor cursor(spec, grid, opts);
  const FramePoint start = cursor.current();
  const std::size_t last = grid.steps;
  const double h = grid.dt();

  RunSummary s;
  s.t_final = grid.t_final;
  s.steps = grid.steps;
  s.coeff_start = coeffs_at(start, Matrix2::Identity(), psi0, hbar);

  Matrix2 u = Matrix2::Identity();
  double max_drdt = 0.0;
  double max_cross = 0.0;
  Complex r_prev2, r_prev;
  const Complex r0 = coupling_ratio(start, hbar);

  for (std::size_t k = 0; true; ++k) {
    const FramePoint& p = cursor.current();
    const Complex r_cur = coupling_ratio(p, hbar);

    // Bound terms. The k=0 forward stencil needs two points of lookahead,
    // but barB(0) carries a factor t=0, so folding it in at k=1 is exact.
    if (k >= 1) {
      const Complex r_next =
          k < last ? coupling_ratio(cursor.next(), hbar) : Complex{};
      if (k == 1) {
        max_drdt = std::max(max_drdt, std::abs((-3.0 * r_prev + 4.0 * r_cur -
                                                r_next) /
                                               (2.0 * h)));
      }
      max_drdt = std::max(
          max_drdt, ratio_derivative(r_prev2, r_prev, r_cur, r_next, k, last, h));
    }
    max_cross = std::max(max_cross, std::abs(std::conj(p.coupling12) * r_cur));

    const double bar_a = std::abs(r0) + std::abs(r_cur);
    const double bar_b = p.t * max_drdt;
    const double bar_c = p.t * max_cross;

    const Matrix2 ua = aeo_at(p, start, hbar);
    const double direct = (u * psi0 - ua * psi0).norm();
    const auto c = coeffs_at(p, u, psi0, hbar);
    const double reconstructed =
        std::sqrt(std::norm(c[0] - s.coeff_start[0]) +
                  std::norm(c[1] - s.coeff_start[1]));
    const double drift = std::abs(c[0] - s.coeff_start[0]);

    s.max_direct_error = std::max(s.max_direct_error, direct);
    s.max_reconstructed_error = std::max(s.max_reconstructed_error, reconstructed);
    s.max_route_gap =
        std::max(s.max_route_gap, std::abs(direct - reconstructed));
    s.max_unitarity_defect = std::max(
        {s.max_unitarity_defect, unitarity_defect(u), unitarity_defect(ua)});
    s.max_coeff_drift = std::max(s.max_coeff_drift, drift);
    s.max_drift_bound_gap =
        std::max(s.max_drift_bound_gap, drift - (bar_a + bar_b + bar_c));

    if (k == last) {
      s.bar_a_end = bar_a;
      s.bar_b_end = bar_b;
      s.bar_c_end = bar_c;
      Matrix2 v0;  // columns: the initial eigenvectors
      v0.col(0) = start.vectors[0];
      v0.col(1) = start.vectors[1];
      s.interaction_end = v0.adjoint() * (ua.adjoint() * u) * v0;
      s.coeff_end = c;
      for (int m = 0; m < 2; ++m) {
        s.overlap_end[m] = s.interaction_end(m, m);
        s.mag_end[m] = std::abs(p.vectors[m].dot(u * start.vectors[m]));
      }
      break;
    }

    u = midpoint_step(spec, p.t, h) * u;
    r_prev2 = r_prev;
    r_prev = r_cur;
    cursor.advance();
  }
  return s;
}

std::size_t default_steps(const HamiltonianSpec& spec, double t_final,
                          double steps_per_unit, std::size_t hard_cap) {
  // Fastest scale: field strength over hbar, probed on a coarse grid, and
  // the rotation rates for the rotating family.
  double rate = 1.0;
  if (spec.is_rotating()) {
    const auto& r = spec.rotating_family();
    rate = std::max(rate, std::hypot(r.omega, r.omega0));
  }
  const int probes = 64;
  for (int i = 0; i <= probes; ++i) {
    const double t = t_final * (static_cast<double>(i) / probes);
    rate = std::max(rate, spectral_norm(at_time(spec, t)) / spec.hbar());
  }
  const double want = std::ceil(steps_per_unit * rate * t_final);
  auto steps = static_cast<std::size_t>(std::min(
      want, static_cast<double>(hard_cap)));
  steps = std::max<std::size_t>(steps, 2);
  if (steps % 2 != 0) ++steps;
  return steps;
}

}  // namespace adiabat
