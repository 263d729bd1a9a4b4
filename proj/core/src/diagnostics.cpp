#include "adiabat/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "adiabat/errors.hpp"

namespace adiabat {

namespace {

int slot(int m) {
  if (m != 1 && m != 2) throw SpecError("level index must be 1 or 2");
  return m - 1;
}

void require_sizes(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw GridMismatch(std::string(what) + ": size mismatch");
}

std::size_t checked_end(const EigenFrame& frame, std::size_t k_end,
                        const char* what) {
  if (k_end >= frame.size()) {
    throw GridMismatch(std::string(what) + ": index beyond the frame");
  }
  return k_end;
}

// <m|d/dt|n> for the two off-diagonal orderings; (2,1) follows from (1,2)
// by orthonormality instead of a second differentiation.
Complex coupling_mn(const FramePoint& p, int m, int n) {
  if (m == n) throw SameLevel("off-diagonal coupling needs two levels");
  return m == 1 ? p.coupling12 : -std::conj(p.coupling12);
}

// Integrand of the phase-dressed coupling integral between levels m and n.
Complex dressed_coupling(const FramePoint& p, int m, int n, double hbar) {
  const double dphi =
      p.dynphase[slot(m)] - p.dynphase[slot(n)];
  return coupling_mn(p, m, n) * std::exp(Complex(0, dphi / hbar));
}

// |dr/dt| on the stored frame with the shared stencil choice: central in
// the interior, second-order one-sided at the grid ends.
double ratio_derivative_at(const EigenFrame& frame, std::size_t j) {
  const double h = frame.dt;
  const std::size_t last = frame.size() - 1;
  auto r = [&](std::size_t i) {
    return coupling_ratio(frame.points[i], frame.hbar);
  };
  if (j == 0) {
    return std::abs((-3.0 * r(0) + 4.0 * r(1) - r(2)) / (2.0 * h));
  }
  if (j == last) {
    return std::abs((3.0 * r(last) - 4.0 * r(last - 1) + r(last - 2)) /
                    (2.0 * h));
  }
  return std::abs((r(j + 1) - r(j - 1)) / (2.0 * h));
}

}  // namespace

std::vector<Complex> first_kind_overlap(const UnitaryTrace& ud,
                                        const UnitaryTrace& ua,
                                        const EigenFrame& frame, int m) {
  require_sizes(ud.size(), ua.size(), "first_kind_overlap");
  require_sizes(ud.size(), frame.size(), "first_kind_overlap");
  const Vector2 v0 = frame.points.front().vectors[slot(m)];
  std::vector<Complex> out;
  out.reserve(ud.size());
  for (std::size_t k = 0; k < ud.size(); ++k) {
    out.push_back(v0.dot(ua.at(k).adjoint() * (ud.at(k) * v0)));
  }
  return out;
}

std::vector<double> second_kind_magnitude(const UnitaryTrace& ud,
                                          const EigenFrame& frame, int m) {
  require_sizes(ud.size(), frame.size(), "second_kind_magnitude");
  const int i = slot(m);
  const Vector2 v0 = frame.points.front().vectors[i];
  std::vector<double> out;
  out.reserve(ud.size());
  for (std::size_t k = 0; k < ud.size(); ++k) {
    out.push_back(std::abs(frame.points[k].vectors[i].dot(ud.at(k) * v0)));
  }
  return out;
}

BarBounds bar_bounds(const EigenFrame& frame, std::size_t k_end) {
  checked_end(frame, k_end, "bar_bounds");
  const double hbar = frame.hbar;
  const double t_end = frame.points[k_end].t;
  const Complex r0 = coupling_ratio(frame.points.front(), hbar);
  const Complex r_end = coupling_ratio(frame.points[k_end], hbar);

  double max_drdt = 0.0;
  double max_cross = 0.0;
  for (std::size_t j = 0; j <= k_end; ++j) {
    max_drdt = std::max(max_drdt, ratio_derivative_at(frame, j));
    const FramePoint& p = frame.points[j];
    max_cross = std::max(max_cross, std::abs(std::conj(p.coupling12) *
                                             coupling_ratio(p, hbar)));
  }

  BarBounds b;
  b.a = std::abs(r0) + std::abs(r_end);
  b.b = t_end * max_drdt;
  b.c = t_end * max_cross;
  return b;
}

Complex xx_integral(const EigenFrame& frame, int m, int n, std::size_t k_end) {
  if (m == n) throw SameLevel("xx_integral: levels must differ");
  slot(m);
  slot(n);
  checked_end(frame, k_end, "xx_integral");
  const double h = frame.dt;
  Complex acc = 0.0;
  Complex prev = dressed_coupling(frame.points.front(), m, n, frame.hbar);
  for (std::size_t j = 1; j <= k_end; ++j) {
    const Complex cur = dressed_coupling(frame.points[j], m, n, frame.hbar);
    acc += 0.5 * h * (prev + cur);
    prev = cur;
  }
  return acc;
}

double simplified_ratio(const EigenFrame& frame, std::size_t k_end) {
  checked_end(frame, k_end, "simplified_ratio");
  double worst = 0.0;
  for (std::size_t j = 0; j <= k_end; ++j) {
    worst = std::max(worst,
                     std::abs(coupling_ratio(frame.points[j], frame.hbar)));
  }
  return worst;
}

Matrix2 interaction_hamiltonian(const EigenFrame& frame, std::size_t k) {
  checked_end(frame, k, "interaction_hamiltonian");
  const double hbar = frame.hbar;
  const Complex upper =
      Complex(0, -hbar) * dressed_coupling(frame.points[k], 1, 2, hbar);
  Matrix2 m;
  m << 0, upper, std::conj(upper), 0;
  return m;
}

Matrix2 dyson_first_order(const EigenFrame& frame, std::size_t k_end) {
  checked_end(frame, k_end, "dyson_first_order");
  // I + (1/(i*hbar)) integral of the interaction generator. Entry (1,2) of
  // the integral is -i*hbar times the dressed-coupling trapezoid, so the
  // off-diagonals are exactly the negated xx integrals.
  Matrix2 m = Matrix2::Identity();
  m(0, 1) = -xx_integral(frame, 1, 2, k_end);
  m(1, 0) = -xx_integral(frame, 2, 1, k_end);
  return m;
}

DiagnosticsReport build_diagnostics(const UnitaryTrace& ud,
                                    const EigenFrame& frame) {
  require_sizes(ud.size(), frame.size(), "build_diagnostics");
  const double hbar = frame.hbar;
  const double h = frame.dt;
  const FramePoint& start = frame.points.front();
  const Complex r0 = coupling_ratio(start, hbar);

  DiagnosticsReport rep;
  rep.grid = ud.grid;
  for (auto& ch : rep.first_kind) ch.reserve(ud.size());
  for (auto& ch : rep.second_kind) ch.reserve(ud.size());
  rep.bar_a.reserve(ud.size());
  rep.bar_b.reserve(ud.size());
  rep.bar_c.reserve(ud.size());
  rep.xx.reserve(ud.size());
  rep.simplified.reserve(ud.size());

  double max_drdt = 0.0;
  double max_cross = 0.0;
  double max_ratio = 0.0;
  Complex xx_acc = 0.0;
  Complex dressed_prev = dressed_coupling(start, 1, 2, hbar);

  for (std::size_t k = 0; k < ud.size(); ++k) {
    const FramePoint& p = frame.points[k];
    const Matrix2 ua = aeo_at(p, start, hbar);
    const Matrix2 interaction = ua.adjoint() * ud.at(k);
    for (int m = 1; m <= 2; ++m) {
      const Vector2& v0 = start.vectors[slot(m)];
      rep.first_kind[slot(m)].push_back(v0.dot(interaction * v0));
      rep.second_kind[slot(m)].push_back(
          std::abs(p.vectors[slot(m)].dot(ud.at(k) * v0)));
    }

    max_drdt = std::max(max_drdt, ratio_derivative_at(frame, k));
    const Complex r = coupling_ratio(p, hbar);
    max_cross = std::max(max_cross, std::abs(std::conj(p.coupling12) * r));
    max_ratio = std::max(max_ratio, std::abs(r));
    rep.bar_a.push_back(std::abs(r0) + std::abs(r));
    rep.bar_b.push_back(p.t * max_drdt);
    rep.bar_c.push_back(p.t * max_cross);
    rep.simplified.push_back(max_ratio);

    if (k > 0) {
      const Complex dressed = dressed_coupling(p, 1, 2, hbar);
      xx_acc += 0.5 * h * (dressed_prev + dressed);
      dressed_prev = dressed;
    }
    rep.xx.push_back(xx_acc);
  }
  return rep;
}

}  // namespace adiabat
