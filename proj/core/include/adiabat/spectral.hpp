#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "adiabat/algebra.hpp"
#include "adiabat/model.hpp"

namespace adiabat {

// Instantaneous eigensystem of a 2x2 Hermitian matrix. Index 0 is the
// upper level ("level 1"), index 1 the lower ("level 2"), so
// values[0] > values[1] always. Eigenvector phases follow the
// largest-component-real-positive convention (ties broken toward the
// first component).
struct Eigensystem2 {
  std::array<double, 2> values{};
  std::array<Vector2, 2> vectors{};
};

Eigensystem2 eig2(const Matrix2& h, double gap_min = 1e-8);

// One instant of the smoothly-transported eigenframe along a spec.
// Level indexing matches Eigensystem2: slot 0 = upper, slot 1 = lower.
struct FramePoint {
  double t = 0.0;
  std::array<double, 2> values{};   // eigenvalues, descending
  std::array<Vector2, 2> vectors{}; // transported eigenvectors
  std::array<double, 2> dynphase{}; // cumulative integral of eigenvalues
  Complex coupling12;               // <upper| d/dt |lower>
};

struct FrameOptions {
  double gap_min = 1e-8;  // reject |lambda2 - lambda1| below this

  // How coupling12 is produced: the Hellmann-Feynman quotient
  // <1|dH/dt|2>/(lambda_2 - lambda_1) (default; derivatives exist for every
  // family), or central differencing of the transported eigenvectors.
  enum class Coupling { hellmann_feynman, vector_fd };
  Coupling coupling = Coupling::hellmann_feynman;
};

// Streams the transported eigenframe over a uniform grid without storing
// the whole trace. Internally looks one grid point ahead so cumulative
// phase integrals keep 4th-order accuracy at every index.
class FrameCursor {
 public:
  FrameCursor(const HamiltonianSpec& spec, const TimeGrid& grid,
              FrameOptions opts = {});

  const FramePoint& current() const { return cur_; }
  // One grid point of lookahead; valid while !done().
  const FramePoint& next() const { return next_; }
  std::size_t index() const { return index_; }
  bool done() const { return index_ >= grid_.steps; }
  void advance();

  const TimeGrid& grid() const { return grid_; }
  const HamiltonianSpec& spec() const { return spec_; }

 private:
  FramePoint make_point(std::size_t k, const FramePoint* prev) const;

  HamiltonianSpec spec_;
  TimeGrid grid_;
  FrameOptions opts_;
  std::size_t index_ = 0;
  FramePoint cur_;
  FramePoint next_;
  // Grid point index(cur_) - 1, kept so even indices can close their
  // Simpson pair without re-evaluating the spectrum.
  std::array<double, 2> prev_values_{};
  std::array<double, 2> prev_dynphase_{};
};

// Fully materialized frame for moderate grids.
struct EigenFrame {
  std::vector<FramePoint> points;
  double t_final = 0.0;
  double dt = 0.0;
  double hbar = 1.0;

  std::size_t size() const { return points.size(); }
};

EigenFrame build_frame(const HamiltonianSpec& spec, const TimeGrid& grid,
                       FrameOptions opts = {});

// hbar * coupling12 / (lambda_upper - lambda_lower): the dimensionless
// amplitude ratio all drift bounds are built from.
Complex coupling_ratio(const FramePoint& p, double hbar);

// Off-diagonal couplings by direct differencing of transported vectors,
// for cross-checking the Hellmann-Feynman route.
Complex fd_coupling12(const HamiltonianSpec& spec, double t, double fd_step,
                      FrameOptions opts = {});

// Max over the grid interior of |coupling12(HF) - coupling12(FD)|.
double hellmann_feynman_residual(const HamiltonianSpec& spec,
                                 const TimeGrid& grid,
                                 FrameOptions opts = {});

}  // namespace adiabat
