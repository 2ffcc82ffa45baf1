#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstddef>

namespace gravsim {

/// Classical fixed-step fourth-order Runge-Kutta over [t0, t0 + duration].
/// The step is shrunk to duration / ceil(duration / max_step) so the final
/// time is hit exactly.
template <typename Vector, typename Rhs>
Vector rk4_integrate(Vector y, Rhs&& rhs, double t0, double duration, double max_step) {
  if (duration <= 0.0) return y;
  const auto steps = static_cast<std::size_t>(std::ceil(duration / max_step - 1e-12));
  const double h = duration / static_cast<double>(steps);
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = t0 + static_cast<double>(n) * h;
    const Vector k1 = rhs(t, y);
    const Vector k2 = rhs(t + 0.5 * h, Vector(y + 0.5 * h * k1));
    const Vector k3 = rhs(t + 0.5 * h, Vector(y + 0.5 * h * k2));
    const Vector k4 = rhs(t + h, Vector(y + h * k3));
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

}  // namespace gravsim
