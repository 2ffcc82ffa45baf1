#pragma once

// Shared types for the gravimeter simulator.
//
// Conventions used everywhere in this library:
//  * strict SI units, all frequencies in rad/s;
//  * time evolution carries e^{-iEt/hbar};
//  * two-level amplitude vectors are ordered (C_b, C_a), excited first.

#include <Eigen/Core>

#include <complex>
#include <numbers>
#include <span>

#include "gravsim/errors.hpp"

namespace gravsim {

using cplx = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Rb-87 Raman gravimeter defaults; every output file echoes the values in use.
inline constexpr double kDefaultHbar = 1.054571817e-34;
inline constexpr double kDefaultAtomMass = 1.443e-25;
inline constexpr double kDefaultG = 9.81;
inline constexpr double kDefaultKeff = 1.610e7;

struct PhysicalConstants {
  double hbar = kDefaultHbar;       // J s
  double default_g = kDefaultG;     // m/s^2
  double atom_mass = kDefaultAtomMass;  // kg

  void validate() const;
};

enum class Level { Ground, Excited };

/// Internal state of the interferometer: C_a (ground) and C_b (excited).
struct TwoLevelState {
  cplx c_b{0.0, 0.0};
  cplx c_a{1.0, 0.0};

  static TwoLevelState ground() { return {cplx{0.0}, cplx{1.0}}; }
  static TwoLevelState excited() { return {cplx{1.0}, cplx{0.0}}; }
  static TwoLevelState from_vector(const Vector2c& v) { return {v(0), v(1)}; }

  Vector2c vector() const { return Vector2c(c_b, c_a); }
  double norm_squared() const { return std::norm(c_a) + std::norm(c_b); }
};

/// Amplitudes of |a,p>, |i,p+hbar k1> and |b,p+hbar k_eff>; p is the family momentum.
struct ThreeLevelState {
  cplx c_g{1.0, 0.0};
  cplx c_i{0.0, 0.0};
  cplx c_e{0.0, 0.0};
  double p = 0.0;  // kg m/s along z

  double norm_squared() const { return std::norm(c_g) + std::norm(c_i) + std::norm(c_e); }
};

/// One square light pulse.
struct PulseParams {
  double rabi_mod = 0.0;     // |Omega| (rad/s)
  double rabi_arg = 0.0;     // arg Omega (rad)
  double detuning = 0.0;     // delta (rad/s)
  double laser_phase = 0.0;  // phi (rad)
  double start_time = 0.0;   // t0 (s)
  double duration = 0.0;     // tau (s)

  cplx rabi() const { return std::polar(rabi_mod, rabi_arg); }
  void validate() const;
};

/// Tolerance on |norm - 1| accepted by state_probability.
inline constexpr double kNormTolerance = 1e-6;

double state_probability(const TwoLevelState& state, Level which);

/// |<a|b>|^2, the gauge-independent comparison between two states.
double fidelity(const TwoLevelState& a, const TwoLevelState& b);

/// Sum of values by recursive halving. Fixed association order, so results
/// do not depend on how the inputs were produced.
double pairwise_sum(std::span<const double> values);

}  // namespace gravsim
