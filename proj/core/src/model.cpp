#include "adiabat/model.hpp"

#include <gsl/gsl_interp.h>
#include <gsl/gsl_spline.h>

#include <array>
#include <cmath>
#include <utility>

#include "adiabat/errors.hpp"

namespace adiabat {

namespace detail {

// Natural cubic splines through the tabulated entries, one channel each for
// h00, h11 (real by Hermiticity) and Re/Im of h01. Immutable after build;
// evaluation passes a null accelerator so concurrent reads are safe.
class SplineBank {
 public:
  SplineBank(const std::vector<double>& s,
             const std::array<std::vector<double>, 4>& channels) {
    for (std::size_t c = 0; c < kChannels; ++c) {
      splines_[c] = gsl_spline_alloc(gsl_interp_cspline, s.size());
      gsl_spline_init(splines_[c], s.data(), channels[c].data(), s.size());
    }
  }

  SplineBank(const SplineBank&) = delete;
  SplineBank& operator=(const SplineBank&) = delete;

  ~SplineBank() {
    for (auto* sp : splines_) gsl_spline_free(sp);
  }

  Matrix2 eval(double s) const {
    const double h00 = gsl_spline_eval(splines_[0], s, nullptr);
    const double h11 = gsl_spline_eval(splines_[1], s, nullptr);
    const Complex h01(gsl_spline_eval(splines_[2], s, nullptr),
                      gsl_spline_eval(splines_[3], s, nullptr));
    Matrix2 m;
    m << Complex(h00, 0), h01, std::conj(h01), Complex(h11, 0);
    return m;
  }

 private:
  static constexpr std::size_t kChannels = 4;
  std::array<gsl_spline*, kChannels> splines_{};
};

}  // namespace detail

namespace {

constexpr double kDomainSlack = 1e-9;

void require_hermitian(const Matrix2& m, const char* what) {
  if (!all_finite(m)) throw SpecError(std::string(what) + ": non-finite entry");
  if (!is_hermitian(m)) {
    throw SpecError(std::string(what) + ": matrix is not Hermitian");
  }
}

// Clamp x into [lo, hi], tolerating kDomainSlack-scale overshoot from
// midpoint evaluation and FD stencils at the boundary.
double clamp_domain(double x, double lo, double hi, const char* what) {
  const double slack = kDomainSlack * std::max(1.0, std::abs(hi - lo));
  if (!(x >= lo - slack && x <= hi + slack)) {
    throw DomainError(std::string(what) + ": parameter " + std::to_string(x) +
                      " outside [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
  return std::min(hi, std::max(lo, x));
}

Matrix2 rotating_at(const RotatingField& p, double hbar, double x) {
  const Complex e = std::exp(Complex(0, 2.0 * p.omega * x));
  Matrix2 m;
  m << 0, -hbar * p.omega0 * std::conj(e), -hbar * p.omega0 * e, 0;
  return m;
}

}  // namespace

HamiltonianSpec HamiltonianSpec::rotating(double omega0, double omega) {
  if (!(omega0 > 0.0) || !(omega > 0.0)) {
    throw SpecError("rotating: omega0 and omega must be positive");
  }
  HamiltonianSpec s;
  s.family_ = RotatingField{omega0, omega};
  return s;
}

HamiltonianSpec HamiltonianSpec::linear_interp(const Matrix2& h0,
                                               const Matrix2& h1) {
  require_hermitian(h0, "linear_interp h0");
  require_hermitian(h1, "linear_interp h1");
  HamiltonianSpec s;
  s.family_ = LinearInterp{hermitize(h0), hermitize(h1)};
  return s;
}

HamiltonianSpec HamiltonianSpec::tabulated(std::vector<double> s_grid,
                                           std::vector<Matrix2> h_samples) {
  if (s_grid.size() != h_samples.size()) {
    throw SpecError("tabulated: s_grid and h_samples sizes differ");
  }
  if (s_grid.size() < 5) {
    throw SpecError("tabulated: need at least 5 samples");
  }
  for (std::size_t i = 1; i < s_grid.size(); ++i) {
    if (!(s_grid[i] > s_grid[i - 1])) {
      throw SpecError("tabulated: s_grid must be strictly ascending");
    }
  }
  if (std::abs(s_grid.front()) > 1e-12 || std::abs(s_grid.back() - 1.0) > 1e-12) {
    throw SpecError("tabulated: s_grid must cover [0, 1]");
  }
  s_grid.front() = 0.0;
  s_grid.back() = 1.0;

  std::array<std::vector<double>, 4> channels;
  for (auto& ch : channels) ch.reserve(s_grid.size());
  for (auto& h : h_samples) {
    require_hermitian(h, "tabulated sample");
    h = hermitize(h);
    channels[0].push_back(h(0, 0).real());
    channels[1].push_back(h(1, 1).real());
    channels[2].push_back(h(0, 1).real());
    channels[3].push_back(h(0, 1).imag());
  }

  HamiltonianSpec s;
  auto bank = std::make_shared<detail::SplineBank>(s_grid, channels);
  s.family_ = Tabulated{std::move(s_grid), std::move(h_samples)};
  s.splines_ = std::move(bank);
  return s;
}

HamiltonianSpec HamiltonianSpec::scaled(double total_time) const {
  if (!(total_time > 0.0)) {
    throw SpecError("scaled: total time must be positive");
  }
  HamiltonianSpec s = *this;
  s.form_ = Form::scaled;
  s.total_time_ = total_time;
  return s;
}

HamiltonianSpec HamiltonianSpec::with_hbar(double hbar) const {
  if (!(hbar > 0.0)) throw SpecError("with_hbar: hbar must be positive");
  HamiltonianSpec s = *this;
  s.hbar_ = hbar;
  return s;
}

bool HamiltonianSpec::is_rotating() const {
  return std::holds_alternative<RotatingField>(family_);
}
bool HamiltonianSpec::is_linear() const {
  return std::holds_alternative<LinearInterp>(family_);
}
bool HamiltonianSpec::is_tabulated() const {
  return std::holds_alternative<Tabulated>(family_);
}
const RotatingField& HamiltonianSpec::rotating_family() const {
  return std::get<RotatingField>(family_);
}
const LinearInterp& HamiltonianSpec::linear_family() const {
  return std::get<LinearInterp>(family_);
}
const Tabulated& HamiltonianSpec::tabulated_family() const {
  return std::get<Tabulated>(family_);
}

Matrix2 HamiltonianSpec::family_at(double x) const {
  if (!std::isfinite(x)) throw DomainError("family_at: non-finite parameter");
  if (form_ == Form::scaled) {
    x = clamp_domain(x, 0.0, 1.0, "family_at (scaled)");
  }
  if (const auto* r = std::get_if<RotatingField>(&family_)) {
    return rotating_at(*r, hbar_, x);
  }
  if (const auto* l = std::get_if<LinearInterp>(&family_)) {
    return (1.0 - x) * l->h0 + x * l->h1;
  }
  const double s = clamp_domain(x, 0.0, 1.0, "family_at (tabulated)");
  return hermitize(splines_->eval(s));
}

bool HamiltonianSpec::has_analytic_derivatives() const {
  return !is_tabulated();
}

Matrix2 HamiltonianSpec::family_d1(double x, double fd_step) const {
  if (const auto* r = std::get_if<RotatingField>(&family_)) {
    const double w = 2.0 * r->omega;
    const Complex e = std::exp(Complex(0, w * x));
    Matrix2 m;
    m << 0, -hbar_ * r->omega0 * Complex(0, -w) * std::conj(e),
        -hbar_ * r->omega0 * Complex(0, w) * e, 0;
    return m;
  }
  if (const auto* l = std::get_if<LinearInterp>(&family_)) {
    return l->h1 - l->h0;
  }
  // Tabulated: second-order finite differences, one-sided at the edges so
  // the stencil never leaves [0, 1].
  const double h = fd_step;
  const double s = clamp_domain(x, 0.0, 1.0, "family_d1 (tabulated)");
  auto F = [this](double u) { return splines_->eval(u); };
  Matrix2 d;
  if (s < h) {
    d = (-3.0 * F(s) + 4.0 * F(s + h) - F(s + 2 * h)) / (2.0 * h);
  } else if (s > 1.0 - h) {
    d = (3.0 * F(s) - 4.0 * F(s - h) + F(s - 2 * h)) / (2.0 * h);
  } else {
    d = (F(s + h) - F(s - h)) / (2.0 * h);
  }
  return hermitize(d);
}

Matrix2 HamiltonianSpec::family_d2(double x, double fd_step) const {
  if (const auto* r = std::get_if<RotatingField>(&family_)) {
    const double w = 2.0 * r->omega;
    return -(w * w) * family_at(x);
  }
  if (std::holds_alternative<LinearInterp>(family_)) {
    return Matrix2::Zero();
  }
  const double h = fd_step;
  const double s = clamp_domain(x, 0.0, 1.0, "family_d2 (tabulated)");
  auto F = [this](double u) { return splines_->eval(u); };
  Matrix2 d;
  if (s < h) {
    d = (2.0 * F(s) - 5.0 * F(s + h) + 4.0 * F(s + 2 * h) - F(s + 3 * h)) /
        (h * h);
  } else if (s > 1.0 - h) {
    d = (2.0 * F(s) - 5.0 * F(s - h) + 4.0 * F(s - 2 * h) - F(s - 3 * h)) /
        (h * h);
  } else {
    d = (F(s + h) - 2.0 * F(s) + F(s - h)) / (h * h);
  }
  return hermitize(d);
}

Matrix2 at_time(const HamiltonianSpec& spec, double t) {
  if (spec.form() == Form::scaled) {
    const double T = spec.total_time();
    return spec.family_at(clamp_domain(t, 0.0, T, "at_time (scaled)") / T);
  }
  return spec.family_at(t);
}

Matrix2 dh_dt(const HamiltonianSpec& spec, double t, double fd_step) {
  if (spec.form() == Form::scaled) {
    const double T = spec.total_time();
    const double s = clamp_domain(t, 0.0, T, "dh_dt (scaled)") / T;
    return spec.family_d1(s, fd_step) / T;
  }
  return spec.family_d1(t, fd_step);
}

TimeGrid::TimeGrid(double t_final_, std::size_t steps_)
    : t_final(t_final_), steps(steps_) {
  if (!(t_final > 0.0) || !std::isfinite(t_final)) {
    throw SpecError("TimeGrid: t_final must be positive and finite");
  }
  if (steps < 2) throw SpecError("TimeGrid: need at least 2 steps");
  if (steps % 2 != 0) {
    throw SpecError("TimeGrid: step count must be even (Simpson quadrature)");
  }
}

}  // namespace adiabat
