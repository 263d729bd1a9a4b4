#include "adiabat/scaling.hpp"

#include <algorithm>
#include <cmath>

#include "adiabat/errors.hpp"
#include "adiabat/evolve.hpp"

namespace adiabat {

namespace {

void require_scaled(const HamiltonianSpec& spec, const char* what) {
  if (spec.form() != Form::scaled) {
    throw SpecError(std::string(what) + ": needs a scaled family (s = t/T)");
  }
}

}  // namespace

Complex f_of_s(const EigenFrame& frame_scaled, std::size_t k) {
  if (k >= frame_scaled.size()) {
    throw GridMismatch("f_of_s: index beyond the frame");
  }
  // hbar <1|d/ds|2> / (i (lambda_1 - lambda_2)) = ratio / i
  return coupling_ratio(frame_scaled.points[k], frame_scaled.hbar) /
         Complex(0, 1);
}

BoundReport min_runtime_bound(const HamiltonianSpec& spec_scaled, double delta,
                              std::size_t s_points) {
  if (!(delta > 0.0)) {
    throw InvalidDelta("target error must be positive");
  }
  require_scaled(spec_scaled, "min_runtime_bound");
  if (s_points < 3) throw SpecError("min_runtime_bound: s grid too coarse");

  // Everything below lives on s in [0,1]: analyze a unit-time view so the
  // frame's couplings and gaps are per-unit-s quantities.
  const HamiltonianSpec unit = spec_scaled.scaled(1.0);
  const double hbar = unit.hbar();
  std::size_t steps = s_points - 1;
  if (steps % 2 != 0) ++steps;
  const TimeGrid grid(1.0, steps);
  const EigenFrame frame = build_frame(unit, grid);
  const double ds = grid.dt();
  const std::size_t last = steps;

  BoundReport rep;
  rep.delta = delta;
  rep.gap_min = frame.points[0].values[0] - frame.points[0].values[1];
  for (auto* col : {&rep.profile.s, &rep.profile.gap, &rep.profile.f_abs,
                    &rep.profile.bracket}) {
    col->reserve(last + 1);
  }

  // max_s [ 2||H'||/gap^2 + 7||H'||^2/gap^3 + ||H''||/gap^2 ]
  double norm_bracket = 0.0;
  std::vector<Complex> f(last + 1);
  for (std::size_t k = 0; k <= last; ++k) {
    const double s = grid.point(k);
    const double gap =
        frame.points[k].values[0] - frame.points[k].values[1];
    const double d1 = spectral_norm(unit.family_d1(s));
    const double d2 = spectral_norm(unit.family_d2(s));
    rep.gap_min = std::min(rep.gap_min, gap);
    rep.max_dh = std::max(rep.max_dh, d1);
    rep.max_d2h = std::max(rep.max_d2h, d2);
    const double bracket = 2.0 * d1 / (gap * gap) +
                           7.0 * d1 * d1 / (gap * gap * gap) +
                           d2 / (gap * gap);
    norm_bracket = std::max(norm_bracket, bracket);
    f[k] = f_of_s(frame, k);
    rep.profile.s.push_back(s);
    rep.profile.gap.push_back(gap);
    rep.profile.f_abs.push_back(std::abs(f[k]));
    rep.profile.bracket.push_back(bracket);
  }
  rep.t_min = std::sqrt(2.0) * hbar / delta * norm_bracket;

  // max_s [ 2|f| + |f'| + |<2|d/ds|1>| |f| ] with f' differenced on the
  // same grid (second-order one-sided at the ends).
  double f_bracket = 0.0;
  for (std::size_t k = 0; k <= last; ++k) {
    Complex df;
    if (k == 0) {
      df = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * ds);
    } else if (k == last) {
      df = (3.0 * f[last] - 4.0 * f[last - 1] + f[last - 2]) / (2.0 * ds);
    } else {
      df = (f[k + 1] - f[k - 1]) / (2.0 * ds);
    }
    const double cross = std::abs(frame.points[k].coupling12) * std::abs(f[k]);
    f_bracket =
        std::max(f_bracket, 2.0 * std::abs(f[k]) + std::abs(df) + cross);
  }
  rep.error_coeff = std::sqrt(2.0) * f_bracket;
  return rep;
}

std::vector<SweepRow> sweep_error_vs_T(const HamiltonianSpec& spec_scaled,
                                       std::vector<double> t_list,
                                       const Vector2& psi0,
                                       double steps_per_unit) {
  require_scaled(spec_scaled, "sweep_error_vs_T");
  if (t_list.empty()) throw SpecError("sweep_error_vs_T: empty T list");
  for (double t : t_list) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw SpecError("sweep_error_vs_T: every T must be positive");
    }
  }
  std::sort(t_list.begin(), t_list.end());

  const double coeff = min_runtime_bound(spec_scaled, 1.0).error_coeff;

  std::vector<SweepRow> rows;
  rows.reserve(t_list.size());
  for (double T : t_list) {
    const HamiltonianSpec sp = spec_scaled.scaled(T);
    auto steps = static_cast<std::size_t>(std::ceil(steps_per_unit * T));
    steps = std::max<std::size_t>(steps, 2);
    if (steps % 2 != 0) ++steps;
    const TimeGrid grid(T, steps);
    const RunSummary run = run_summary(sp, grid, psi0);
    SweepRow row{T, run.max_direct_error, coeff / T};
    if (row.max_err > row.bound_over_T + 1e-6) {
      throw Error("sweep_error_vs_T: simulated error " +
                  std::to_string(row.max_err) + " exceeded the envelope " +
                  std::to_string(row.bound_over_T) + " at T = " +
                  std::to_string(T));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace adiabat
