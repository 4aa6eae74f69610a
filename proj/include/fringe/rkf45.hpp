#pragma once

// Embedded Runge-Kutta-Fehlberg 4(5) with PI-free step control.
// The RHS is any callable rhs(const State&, State&) where State is
// std::array<double, N>. Steps are accepted against a mixed
// absolute/relative error norm; the 5th-order solution propagates.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "fringe/errors.hpp"

namespace fringe::rkf45 {

struct Control {
  double rtol = 1e-8;
  double atol = 1e-12;
  double dt_init = 0.0;       // 0: start from the full interval
  double dt_min = 1e-12;      // [s]
  long max_steps = 2000000;
  bool clip_negative = false; // clamp components at 0 after each step
};

struct Stats {
  long steps = 0;
  long rejected = 0;
  double clipped = 0.0; // total mass of negative excursions removed
};

template <std::size_t N, class RHS>
Stats integrate(RHS&& rhs, std::array<double, N>& y, double t0, double t1,
                const Control& ctl) {
  using State = std::array<double, N>;
  static constexpr double a2 = 1.0 / 4, a3 = 3.0 / 8, a4 = 12.0 / 13, a5 = 1.0,
                          a6 = 1.0 / 2;
  static constexpr double b21 = 1.0 / 4;
  static constexpr double b31 = 3.0 / 32, b32 = 9.0 / 32;
  static constexpr double b41 = 1932.0 / 2197, b42 = -7200.0 / 2197,
                          b43 = 7296.0 / 2197;
  static constexpr double b51 = 439.0 / 216, b52 = -8.0, b53 = 3680.0 / 513,
                          b54 = -845.0 / 4104;
  static constexpr double b61 = -8.0 / 27, b62 = 2.0, b63 = -3544.0 / 2565,
                          b64 = 1859.0 / 4104, b65 = -11.0 / 40;
  // 5th order weights and (5th - 4th) error weights
  static constexpr double c1 = 16.0 / 135, c3 = 6656.0 / 12825,
                          c4 = 28561.0 / 56430, c5 = -9.0 / 50, c6 = 2.0 / 55;
  static constexpr double e1 = c1 - 25.0 / 216, e3 = c3 - 1408.0 / 2565,
                          e4 = c4 - 2197.0 / 4104, e5 = c5 + 1.0 / 5, e6 = c6;
  (void)a2; (void)a3; (void)a4; (void)a5; (void)a6;

  Stats st;
  if (t1 <= t0) return st;
  double t = t0;
  double dt = ctl.dt_init > 0.0 ? std::min(ctl.dt_init, t1 - t0) : (t1 - t0);

  State k1, k2, k3, k4, k5, k6, ytmp, ynew;
  while (t < t1) {
    dt = std::min(dt, t1 - t);
    rhs(y, k1);
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + dt * b21 * k1[i];
    rhs(ytmp, k2);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + dt * (b31 * k1[i] + b32 * k2[i]);
    rhs(ytmp, k3);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + dt * (b41 * k1[i] + b42 * k2[i] + b43 * k3[i]);
    rhs(ytmp, k4);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + dt * (b51 * k1[i] + b52 * k2[i] + b53 * k3[i] + b54 * k4[i]);
    rhs(ytmp, k5);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + dt * (b61 * k1[i] + b62 * k2[i] + b63 * k3[i] +
                             b64 * k4[i] + b65 * k5[i]);
    rhs(ytmp, k6);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      ynew[i] = y[i] + dt * (c1 * k1[i] + c3 * k3[i] + c4 * k4[i] + c5 * k5[i] +
                             c6 * k6[i]);
      const double ei =
          dt * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i]);
      const double sc = ctl.atol + ctl.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err += (ei / sc) * (ei / sc);
    }
    err = std::sqrt(err / N);

    if (err <= 1.0) {
      t += dt;
      y = ynew;
      if (ctl.clip_negative)
        for (std::size_t i = 0; i < N; ++i)
          if (y[i] < 0.0) {
            st.clipped += -y[i];
            y[i] = 0.0;
          }
      ++st.steps;
    } else {
      ++st.rejected;
    }
    // a non-finite estimate (overshoot into an invalid region) retries small
    const double fac =
        std::isfinite(err)
            ? std::clamp(0.9 * std::pow(std::max(err, 1e-12), -0.2), 0.2, 5.0)
            : 0.2;
    dt *= fac;
    if (dt < ctl.dt_min && t < t1)
      throw SolverError("rkf45: step size underflow");
    if (st.steps + st.rejected > ctl.max_steps)
      throw SolverError("rkf45: step budget exhausted");
  }
  return st;
}

}  // namespace fringe::rkf45
