#pragma once

// Stimulated Raman transitions between |a, p> and |b, p + hbar k_eff> through a
// far-detuned intermediate level |i, p + hbar k1>.

#include <array>
#include <vector>

#include "gravsim/core.hpp"

namespace gravsim::raman {

struct LaserPair {
  double k1 = 0.0;      // rad/m, along z
  double k2 = 0.0;      // rad/m; counter-propagating means k1 * k2 < 0
  double omega1 = 0.0;  // rad/s
  double omega2 = 0.0;  // rad/s
  double phi1 = 0.0;    // rad
  double phi2 = 0.0;    // rad
  cplx rabi_gi{0.0};    // |a> <-> |i> coupling (rad/s)
  cplx rabi_ei{0.0};    // |b> <-> |i> coupling (rad/s)

  double k_eff() const { return k1 - k2; }

  /// Throws InvalidParameterError unless k1 * k2 < 0 and |k_eff| = 2|k1| within rel_tol.
  void check_counter_propagating(double rel_tol) const;
};

/// Internal energies as angular frequencies (rad/s).
struct LevelFrequencies {
  double omega_a = 0.0;
  double omega_i = 0.0;
  double omega_b = 0.0;

  double omega_ba() const { return omega_b - omega_a; }
};

struct RamanDetunings {
  double delta1 = 0.0;            // rad/s
  double delta2 = 0.0;            // rad/s
  double delta_two_photon = 0.0;  // delta1 - delta2

  double mean() const { return 0.5 * (delta1 + delta2); }
};

/// Single-photon detunings including the kinetic energy of each momentum family.
RamanDetunings detunings(const LaserPair& lasers, double p, const PhysicalConstants& atom,
                         const LevelFrequencies& levels);

/// delta(p) = w1 - w2 - (w_ba + p k_eff / m + hbar k_eff^2 / 2m), written without Delta1/Delta2.
double two_photon_detuning(const LaserPair& lasers, double p, const PhysicalConstants& atom,
                           double omega_ba);

/// How the effective couplings are read off the eliminated equations.
enum class EliminationForm {
  /// Omega_eff = Omega_gi Omega_ei* / 2Delta; light shifts |Omega_gi|^2/4Delta, |Omega_ei|^2/4Delta.
  Standard,
  /// The /4Delta expressions exactly as printed, including a complex ground-state shift.
  Literal,
};

struct EffectiveParams {
  cplx omega_eff{0.0};  // rad/s
  cplx ac_g{0.0};       // ground-state light shift (rad/s); real in Standard form
  cplx ac_e{0.0};       // excited-state light shift (rad/s); real in Standard form
  cplx delta_ac{0.0};   // ac_e - ac_g
  double phi_eff = 0.0;  // phi2 - phi1
  double big_delta = 0.0;
  double delta1 = 0.0;  // raw values when built from RamanDetunings, else big_delta
  double delta2 = 0.0;
  bool adiabatic = true;  // |Delta| >= 10 max(|Omega_gi|, |Omega_ei|)
  EliminationForm form = EliminationForm::Standard;
};

EffectiveParams effective_params(const LaserPair& lasers, double big_delta,
                                 EliminationForm form = EliminationForm::Standard);

/// Uses Delta = (Delta1 + Delta2)/2 and records both raw detunings.
EffectiveParams effective_params(const LaserPair& lasers, const RamanDetunings& det,
                                 EliminationForm form = EliminationForm::Standard);

/// Effective two-level propagator on (C_e, C_g) for one square Raman pulse.
/// Requires real light shifts (Standard form).
Matrix2c raman_propagator(const EffectiveParams& params, double delta, double t0, double duration);

/// state.c_b holds C_{b, p + hbar k_eff}, state.c_a holds C_{a, p}.
TwoLevelState raman_pulse(const TwoLevelState& state, const EffectiveParams& params, double delta,
                          double t0, double duration);

/// Same fringe law as twolevel::mach_zehnder_probability.
double raman_sequence_probability(double delta, double tau_p, double dphi_laser);

/// Largest step accepted by three_level_ode_oracle.
double three_level_max_step(const LaserPair& lasers, const RamanDetunings& det);

/// RK4 of the three coupled amplitude equations before elimination, in the
/// interaction picture (C_g, C_i, C_e) with the single-photon detunings in det.
ThreeLevelState three_level_ode_oracle(const ThreeLevelState& state, const LaserPair& lasers,
                                       const RamanDetunings& det, double t0, double duration,
                                       double dt);

/// Same integration, also reporting max |C_i|^2 seen at the step boundaries.
ThreeLevelState three_level_ode_oracle(const ThreeLevelState& state, const LaserPair& lasers,
                                       const RamanDetunings& det, double t0, double duration,
                                       double dt, double& max_intermediate);

/// Momentum-labelled branch of the interferometer.
struct Branch {
  Level level = Level::Ground;
  double p = 0.0;  // kg m/s
};

/// A Raman transition flips the level and adds +hbar k_eff (a -> b) or -hbar k_eff (b -> a).
Branch transition(const Branch& branch, double k_eff, double hbar);

/// Output branches of pi/2 - pi - pi/2 starting in |a, p0>: {upper->b, upper->a, lower->b, lower->a}.
std::array<Branch, 4> mach_zehnder_branches(double p0, double k_eff, double hbar);

}  // namespace gravsim::raman
