#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "curveflow/errors.hpp"

namespace curveflow {

template <std::size_t N>
using OdeState = std::array<double, N>;

struct OdeTolerance {
  double rtol = 1e-10;
  double atol = 1e-10;
  double h_min = 1e-13;
  std::size_t max_steps = 1'000'000;
};

/// Dormand-Prince 5(4) embedded pair with step-size control.
///
/// `advance` integrates from the current time to a target (which may lie on
/// either side), shortening the last step so the target is hit exactly.
/// Trial steps producing non-finite values or error estimates are rejected.
template <std::size_t N>
class DormandPrince {
 public:
  using State = OdeState<N>;

  DormandPrince(double t0, const State& y0, double h0, OdeTolerance tol)
      : t_(t0), y_(y0), h_(std::abs(h0)), tol_(tol) {}

  double time() const noexcept { return t_; }
  const State& state() const noexcept { return y_; }
  std::size_t steps() const noexcept { return steps_; }

  template <class Rhs>
  void advance(Rhs&& rhs, double target) {
    const double dir = target >= t_ ? 1.0 : -1.0;
    while ((target - t_) * dir > 0.0) {
      if (++steps_ > tol_.max_steps) throw StiffnessError("ODE integration exceeded the step budget");
      double h = std::min(h_, std::abs(target - t_));
      const bool last = h == std::abs(target - t_);
      State y_new;
      const double err = trial(rhs, dir * h, y_new);
      if (std::isfinite(err) && err <= 1.0) {
        t_ = last ? target : t_ + dir * h;
        y_ = y_new;
        const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        // Keep the controller's step when a short landing step was taken.
        if (!last || h >= h_) h_ = h * grow;
      } else {
        const double shrink = std::isfinite(err) ? std::clamp(0.9 * std::pow(err, -0.25), 0.1, 0.5) : 0.1;
        h_ = h * shrink;
        if (h_ < tol_.h_min)
          throw StiffnessError("ODE step size underflow at t = " + std::to_string(t_));
      }
    }
  }

 private:
  template <class Rhs>
  double trial(Rhs& rhs, double h, State& y_new) const {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;

    State k1, k2, k3, k4, k5, k6, k7, tmp;
    auto stage = [&](State& out, double tc, auto&& combine) {
      for (std::size_t i = 0; i < N; ++i) tmp[i] = y_[i] + h * combine(i);
      out = rhs(t_ + tc * h, tmp);
    };
    k1 = rhs(t_, y_);
    stage(k2, c2, [&](std::size_t i) { return a21 * k1[i]; });
    stage(k3, c3, [&](std::size_t i) { return a31 * k1[i] + a32 * k2[i]; });
    stage(k4, c4, [&](std::size_t i) { return a41 * k1[i] + a42 * k2[i] + a43 * k3[i]; });
    stage(k5, c5, [&](std::size_t i) { return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]; });
    stage(k6, 1.0, [&](std::size_t i) {
      return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i];
    });
    for (std::size_t i = 0; i < N; ++i)
      y_new[i] = y_[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    k7 = rhs(t_ + h, y_new);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = tol_.atol + tol_.rtol * std::max(std::abs(y_[i]), std::abs(y_new[i]));
      const double ratio = std::abs(e) / scale;
      if (!std::isfinite(ratio) || !std::isfinite(y_new[i])) return std::numeric_limits<double>::infinity();
      err = std::max(err, ratio);
    }
    return err;
  }

  double t_;
  State y_;
  double h_;
  OdeTolerance tol_;
  std::size_t steps_ = 0;
};

}  // namespace curveflow
