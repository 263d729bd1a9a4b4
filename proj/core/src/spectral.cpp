#include "adiabat/spectral.hpp"

#include <cmath>
#include <string>

#include "adiabat/errors.hpp"

namespace adiabat {

namespace {

// Global phase per the fixed convention: scale so the largest-magnitude
// component is real positive; on a tie the first component wins.
Vector2 fix_phase(Vector2 v) {
  const int idx = std::abs(v(0)) >= std::abs(v(1)) ? 0 : 1;
  const Complex z = v(idx);
  const double az = std::abs(z);
  if (az == 0.0) throw SpecError("fix_phase: zero pivot component");
  return v * (std::conj(z) / az);
}

// Align v to ref: multiply by the unit phase making <ref|v> real positive.
// This is the discrete parallel-transport step.
Vector2 align_phase(const Vector2& ref, Vector2 v, double t) {
  const Complex ov = ref.dot(v);  // Eigen dot conjugates the left argument
  const double mag = std::abs(ov);
  if (mag < 1e-12) {
    throw SpecError("parallel transport lost track of a level near t = " +
                    std::to_string(t) + " (grid too coarse)");
  }
  return v * (std::conj(ov) / mag);
}

// Eigenvalues only — cheap lookahead for the cumulative quadrature.
std::array<double, 2> eig_values(const Matrix2& h) {
  const PauliCoeffs a = pauli_decompose(h);
  const double r = a.radius();
  return {a.a0 + r, a.a0 - r};
}

Complex hf_coupling(const HamiltonianSpec& spec, double t,
                    const std::array<Vector2, 2>& v,
                    const std::array<double, 2>& values) {
  const Matrix2 hdot = dh_dt(spec, t);
  return v[0].dot(hdot * v[1]) / Complex(values[1] - values[0], 0);
}

}  // namespace

Eigensystem2 eig2(const Matrix2& h, double gap_min) {
  if (!all_finite(h)) throw SpecError("eig2: non-finite matrix entry");
  const PauliCoeffs a = pauli_decompose(h);
  const double r = a.radius();
  if (2.0 * r < gap_min) {
    throw DegenerateSpectrum("eig2: eigenvalue gap " + std::to_string(2.0 * r) +
                             " below floor");
  }
  // Eigenvector of a.sigma for +r, picking the numerically stable branch.
  Vector2 up;
  if (a.az >= 0.0) {
    up << Complex(r + a.az, 0), Complex(a.ax, a.ay);
  } else {
    up << Complex(a.ax, -a.ay), Complex(r - a.az, 0);
  }
  up.normalize();
  // The lower level spans the orthogonal complement.
  Vector2 down;
  down << -std::conj(up(1)), std::conj(up(0));

  Eigensystem2 e;
  e.values = {a.a0 + r, a.a0 - r};
  e.vectors = {fix_phase(up), fix_phase(down)};
  return e;
}

Complex coupling_ratio(const FramePoint& p, double hbar) {
  return hbar * p.coupling12 / Complex(p.values[0] - p.values[1], 0);
}

FrameCursor::FrameCursor(const HamiltonianSpec& spec, const TimeGrid& grid,
                         FrameOptions opts)
    : spec_(spec), grid_(grid), opts_(opts) {
  cur_ = make_point(0, nullptr);
  next_ = make_point(1, &cur_);
}

void FrameCursor::advance() {
  if (done()) throw Error("FrameCursor::advance past the final grid point");
  prev_values_ = cur_.values;
  prev_dynphase_ = cur_.dynphase;
  cur_ = next_;
  ++index_;
  if (index_ < grid_.steps) {
    next_ = make_point(index_ + 1, &cur_);
  }
}

FramePoint FrameCursor::make_point(std::size_t k, const FramePoint* prev) const {
  const double t = grid_.point(k);
  Eigensystem2 e;
  try {
    e = eig2(at_time(spec_, t), opts_.gap_min);
  } catch (const DegenerateSpectrum& d) {
    throw DegenerateSpectrum(d.what(), t);
  }

  FramePoint p;
  p.t = t;
  p.values = e.values;
  if (prev) {
    p.vectors = {align_phase(prev->vectors[0], e.vectors[0], t),
                 align_phase(prev->vectors[1], e.vectors[1], t)};
  } else {
    p.vectors = e.vectors;
  }

  if (opts_.coupling == FrameOptions::Coupling::vector_fd) {
    // Local differencing, then rotate into this frame's gauge (the two
    // gauges differ by one constant phase per level).
    const Complex local = fd_coupling12(spec_, t, grid_.dt(), opts_);
    const Complex p1 = e.vectors[0].dot(p.vectors[0]);
    const Complex p2 = e.vectors[1].dot(p.vectors[1]);
    p.coupling12 = local * p2 / p1;
  } else {
    p.coupling12 = hf_coupling(spec_, t, p.vectors, p.values);
  }

  // Cumulative Simpson for the dynamical phases: even indices close a
  // Simpson pair, odd indices take the 4th-order half-step rule using one
  // eigenvalue of lookahead.
  if (k == 0) {
    p.dynphase = {0.0, 0.0};
  } else {
    const double h = grid_.dt();
    if (k % 2 == 1) {
      const auto ahead = eig_values(at_time(spec_, grid_.point(k + 1)));
      for (int m = 0; m < 2; ++m) {
        p.dynphase[m] = prev->dynphase[m] +
                        (h / 12.0) * (5.0 * prev->values[m] + 8.0 * p.values[m] -
                                      ahead[m]);
      }
    } else {
      for (int m = 0; m < 2; ++m) {
        p.dynphase[m] =
            prev_dynphase_[m] +
            (h / 3.0) * (prev_values_[m] + 4.0 * prev->values[m] + p.values[m]);
      }
    }
  }
  return p;
}

EigenFrame build_frame(const HamiltonianSpec& spec, const TimeGrid& grid,
                       FrameOptions opts) {
  EigenFrame frame;
  frame.points.reserve(grid.size());
  frame.t_final = grid.t_final;
  frame.dt = grid.dt();
  frame.hbar = spec.hbar();
  FrameCursor cursor(spec, grid, opts);
  frame.points.push_back(cursor.current());
  while (!cursor.done()) {
    cursor.advance();
    frame.points.push_back(cursor.current());
  }
  return frame;
}

Complex fd_coupling12(const HamiltonianSpec& spec, double t, double fd_step,
                      FrameOptions opts) {
  const double d = fd_step;
  double lo = 0.0;
  double hi = 0.0;  // 0 width means "unbounded domain"
  if (spec.form() == Form::scaled) {
    hi = spec.total_time();
  } else if (spec.is_tabulated()) {
    hi = 1.0;
  } else {
    lo = t - 2.0 * d;  // closed-form unscaled families: any t is fine
    hi = t + 2.0 * d;
  }

  const Eigensystem2 base = eig2(at_time(spec, t), opts.gap_min);
  auto aligned = [&](double u, int m) {
    const Eigensystem2 e = eig2(at_time(spec, u), opts.gap_min);
    return align_phase(base.vectors[m], e.vectors[m], u);
  };

  Vector2 dv2;
  if (t - d < lo) {
    dv2 = (-3.0 * base.vectors[1] + 4.0 * aligned(t + d, 1) -
           aligned(t + 2.0 * d, 1)) /
          (2.0 * d);
  } else if (t + d > hi) {
    dv2 = (3.0 * base.vectors[1] - 4.0 * aligned(t - d, 1) +
           aligned(t - 2.0 * d, 1)) /
          (2.0 * d);
  } else {
    dv2 = (aligned(t + d, 1) - aligned(t - d, 1)) / (2.0 * d);
  }
  return base.vectors[0].dot(dv2);
}

double hellmann_feynman_residual(const HamiltonianSpec& spec,
                                 const TimeGrid& grid, FrameOptions opts) {
  double worst = 0.0;
  for (std::size_t k = 0; k <= grid.steps; ++k) {
    const double t = grid.point(k);
    const Eigensystem2 e = eig2(at_time(spec, t), opts.gap_min);
    const Complex hf = hf_coupling(spec, t, e.vectors, e.values);
    const Complex fd = fd_coupling12(spec, t, grid.dt(), opts);
    worst = std::max(worst, std::abs(hf - fd));
  }
  return worst;
}

}  // namespace adiabat
