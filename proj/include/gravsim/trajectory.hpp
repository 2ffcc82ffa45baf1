#pragma once

// Classical free fall, action integrals and the interferometer geometry.
// z points up and g > 0, so the Lagrangian is m zdot^2 / 2 - m g z.

#include <array>

#include "gravsim/core.hpp"

namespace gravsim::trajectory {

struct FreeFallTrajectory {
  double z1 = 0.0;  // m
  double v1 = 0.0;  // m/s
  double t1 = 0.0;  // s
  double g = kDefaultG;

  double position(double t) const;
  double velocity(double t) const;
};

/// Closed-form action of the classical path from (z1, t1) to (z2, t2).
double classical_action(double z1, double t1, double z2, double t2, double m, double g);

/// Composite Simpson integral of L along the connecting classical path.
/// n_steps is rounded up to the next even number and must be >= 1000.
double action_quadrature_oracle(double z1, double t1, double z2, double t2, double m, double g,
                                int n_steps);

/// The trajectory through both endpoints.
FreeFallTrajectory connecting_trajectory(double z1, double t1, double z2, double t2, double g);

struct TrajectoryVertices {
  double z_a = 0.0, z_b = 0.0, z_c = 0.0, z_d = 0.0;
  double z_a0 = 0.0, z_b0 = 0.0, z_c0 = 0.0, z_d0 = 0.0;
  double T = 0.0;
  double g = 0.0;
};

/// A at t = 0, C (kicked arm) and D at t = T, B at 2T; the *0 set repeats the
/// construction with g = 0.
TrajectoryVertices build_vertices(double z0, double v0, double T, double k_eff, double g, double m,
                                  double hbar = kDefaultHbar);

/// (m / T hbar)(z_C - z_D)[z_C + z_D - z_A - z_B - g T^2].
double path_phase(const TrajectoryVertices& v, double T, double m, double g,
                  double hbar = kDefaultHbar);

/// [S(A->C) + S(C->B) - S(A->D) - S(D->B)] / hbar along the four straight-segment legs.
double path_phase_from_actions(const TrajectoryVertices& v, double T, double m, double g,
                               double hbar = kDefaultHbar);

/// phi1 - 2 phi2 + phi3.
double laser_phase_combination(const std::array<double, 3>& phases);

/// k_eff (z_C - z_B - z_A + z_D) + phi1 - 2 phi2 + phi3.
double laser_phase_sum(const TrajectoryVertices& v, const std::array<double, 3>& phases,
                       double k_eff);

/// k_eff g T^2 + phi1 - 2 phi2 + phi3.
double total_phase(double T, double k_eff, double g, const std::array<double, 3>& phases);

/// Frequency step omega_m between consecutive pulses for a chirp rate beta,
/// chosen so that 2 omega_m T = beta T^2.
double chirp_frequency_step(double beta, double T);

/// (beta - k_eff g) T^2 + dphi_laser.
double chirped_phase(double beta, double k_eff, double g, double T, double dphi_laser);

}  // namespace gravsim::trajectory
