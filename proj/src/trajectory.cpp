#include "gravsim/trajectory.hpp"

#include <fmt/format.h>

#include <cmath>

#include "gravsim/quadrature.hpp"

namespace gravsim::trajectory {

namespace {

void check_order(double t1, double t2) {
  if (!(t2 > t1)) {
    throw TimeOrderError(fmt::format("need t2 > t1, got t1={} t2={}", t1, t2));
  }
}

}  // namespace

double FreeFallTrajectory::position(double t) const {
  const double s = t - t1;
  return z1 + v1 * s - 0.5 * g * s * s;
}

double FreeFallTrajectory::velocity(double t) const { return v1 - g * (t - t1); }

double classical_action(double z1, double t1, double z2, double t2, double m, double g) {
  check_order(t1, t2);
  const double dt = t2 - t1;
  const double dz = z2 - z1;
  return m * dz * dz / (2.0 * dt) - m * g * dt * (z2 + z1) / 2.0 - m * g * g * dt * dt * dt / 24.0;
}

FreeFallTrajectory connecting_trajectory(double z1, double t1, double z2, double t2, double g) {
  check_order(t1, t2);
  const double dt = t2 - t1;
  return {z1, (z2 - z1) / dt + 0.5 * g * dt, t1, g};
}

double action_quadrature_oracle(double z1, double t1, double z2, double t2, double m, double g,
                                int n_steps) {
  check_order(t1, t2);
  if (n_steps < 1000) {
    throw InvalidParameterError(fmt::format("action quadrature needs n_steps >= 1000, got {}",
                                            n_steps));
  }
  const FreeFallTrajectory path = connecting_trajectory(z1, t1, z2, t2, g);
  auto lagrangian = [&](double t) {
    const double v = path.velocity(t);
    return 0.5 * m * v * v - m * g * path.position(t);
  };
  return simpson(lagrangian, t1, t2, static_cast<std::size_t>(n_steps));
}

TrajectoryVertices build_vertices(double z0, double v0, double T, double k_eff, double g, double m,
                                  double hbar) {
  if (!(T > 0.0)) throw InvalidParameterError(fmt::format("T must be > 0, got {}", T));
  if (!(m > 0.0)) throw InvalidParameterError(fmt::format("mass must be > 0, got {}", m));
  const double v_r = hbar * k_eff / m;
  auto fill = [&](double gg, double& a, double& b, double& c, double& d) {
    const double fall = 0.5 * gg * T * T;
    a = z0;
    c = z0 + (v0 + v_r) * T - fall;  // kicked at A, still kicked at T
    d = z0 + v0 * T - fall;
    // Both arms meet at B: C loses the kick, D gains it.
    b = z0 + (2.0 * v0 + v_r) * T - 4.0 * fall;
  };
  TrajectoryVertices v;
  v.T = T;
  v.g = g;
  fill(g, v.z_a, v.z_b, v.z_c, v.z_d);
  fill(0.0, v.z_a0, v.z_b0, v.z_c0, v.z_d0);
  return v;
}

double path_phase(const TrajectoryVertices& v, double T, double m, double g, double hbar) {
  if (!(T > 0.0)) throw InvalidParameterError(fmt::format("T must be > 0, got {}", T));
  // Bracket regrouped as two arm displacements so that the large absolute
  // heights cancel before the gravity term is subtracted.
  const double bracket = ((v.z_c - v.z_a) + (v.z_d - v.z_b)) - g * T * T;
  return m / (T * hbar) * (v.z_c - v.z_d) * bracket;
}

double path_phase_from_actions(const TrajectoryVertices& v, double T, double m, double g,
                               double hbar) {
  const double upper = classical_action(v.z_a, 0.0, v.z_c, T, m, g) +
                       classical_action(v.z_c, T, v.z_b, 2.0 * T, m, g);
  const double lower = classical_action(v.z_a, 0.0, v.z_d, T, m, g) +
                       classical_action(v.z_d, T, v.z_b, 2.0 * T, m, g);
  return (upper - lower) / hbar;
}

double laser_phase_combination(const std::array<double, 3>& phases) {
  return phases[0] - 2.0 * phases[1] + phases[2];
}

double laser_phase_sum(const TrajectoryVertices& v, const std::array<double, 3>& phases,
                       double k_eff) {
  return k_eff * ((v.z_c - v.z_a) + (v.z_d - v.z_b)) + laser_phase_combination(phases);
}

double total_phase(double T, double k_eff, double g, const std::array<double, 3>& phases) {
  if (!(T >= 0.0)) throw InvalidParameterError(fmt::format("T must be >= 0, got {}", T));
  return k_eff * g * T * T + laser_phase_combination(phases);
}

double chirp_frequency_step(double beta, double T) { return 0.5 * beta * T; }

double chirped_phase(double beta, double k_eff, double g, double T, double dphi_laser) {
  return 2.0 * chirp_frequency_step(beta, T) * T - k_eff * g * T * T + dphi_laser;
}

}  // namespace gravsim::trajectory
