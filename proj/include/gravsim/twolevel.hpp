#pragma once

// Laser-driven two-level atom in the rotating-wave approximation.
//
// Amplitudes follow the interaction picture of |psi> = C_a e^{-i w_a t}|a> +
// C_b e^{-i w_b t}|b>, so they stay constant whenever no light is on.

#include <array>
#include <span>
#include <vector>

#include "gravsim/core.hpp"
#include "gravsim/parallel.hpp"

namespace gravsim::twolevel {

/// H_int(t) in joules, Hermitian, zero diagonal.
Matrix2c interaction_hamiltonian(const PulseParams& pulse, double t, double hbar = kDefaultHbar);

struct RotatingFrameHamiltonian {
  double delta = 0.0;
  double rabi_mod = 0.0;
  double rabi_arg = 0.0;
  double laser_phase = 0.0;

  static RotatingFrameHamiltonian from_pulse(const PulseParams& pulse);

  /// Phase carried by the off-diagonal element: Omega e^{-i phi} = |Omega| e^{-i(phi - arg Omega)}.
  double coupling_phase() const { return laser_phase - rabi_arg; }
  Matrix2c matrix(double hbar = kDefaultHbar) const;
};

/// Time-independent H_R = (hbar/2) [[-delta, Omega e^{-i phi}], [Omega* e^{i phi}, delta]].
Matrix2c rotating_frame_hamiltonian(const PulseParams& pulse, double hbar = kDefaultHbar);

struct MixingAngle {
  double theta = 0.0;    // [0, pi]
  double omega_r = 0.0;  // off-resonant Rabi frequency
};

/// sin(theta) = Omega/Omega_R, cos(theta) = -delta/Omega_R.
MixingAngle mixing_angle(double delta, double rabi);

struct Eigensystem {
  double lambda_plus = 0.0;   // J
  double lambda_minus = 0.0;  // J
  Vector2c v_plus;
  Vector2c v_minus;

  Matrix2c projector_plus() const { return v_plus * v_plus.adjoint(); }
  Matrix2c projector_minus() const { return v_minus * v_minus.adjoint(); }
};

/// Analytic eigenpairs built from sin(theta/2), cos(theta/2) and e^{+-i phi/2}.
Eigensystem eigensystem(const RotatingFrameHamiltonian& h, double hbar = kDefaultHbar);

/// Closed-form projector matrices |lambda_+-><lambda_+-| in the (b, a) basis.
Matrix2c projector_plus_closed_form(double theta, double phi);
Matrix2c projector_minus_closed_form(double theta, double phi);

/// Square-pulse propagator on (C_b, C_a).
///
/// frame_detuning is the delta that appears in the e^{-+i delta t} phase
/// reference of the amplitudes; coupling_detuning is the detuning seen by the
/// rotating-frame Hamiltonian (they differ only once AC-Stark shifts enter).
/// coupling_phase is phi - arg(Omega).
Matrix2c square_pulse_propagator(double rabi_mod, double coupling_phase, double frame_detuning,
                                 double coupling_detuning, double t0, double tau);

Matrix2c pulse_propagator(const PulseParams& pulse);

TwoLevelState evolve_pulse(const TwoLevelState& state, const PulseParams& pulse);

/// Dark interval: interaction-picture amplitudes are unchanged.
TwoLevelState evolve_free(const TwoLevelState& state, double duration);

/// 1/2 [1 - cos(dphi_laser - delta tau_p / 2)], the small-detuning fringe law.
double mach_zehnder_probability(double delta, double tau_p, double dphi_laser);

/// Pulse start times of the three-pulse sequence.
enum class PulseTimeline {
  /// t2 = t1 + T + tau_p/2, t3 = t1 + 2T + 3 tau_p/2 (equal dark intervals of length T).
  Figure,
  /// t2 = t1 + T, t3 = t1 + 2T (start times spaced by T).
  UniformStarts,
};

struct SequenceParams {
  std::array<double, 3> phases{0.0, 0.0, 0.0};
  double T = 0.0;      // dark interval (s)
  double tau_p = 0.0;  // pi-pulse duration (s); the beam splitters last tau_p/2
  double rabi = 0.0;   // rad/s
  double delta = 0.0;  // rad/s
  double t1 = 0.0;     // start of the first pulse (s)
  PulseTimeline timeline = PulseTimeline::Figure;

  void validate() const;
  std::array<PulseParams, 3> pulses() const;
};

/// Final state after pi/2 - pi - pi/2, starting from the ground state.
TwoLevelState run_sequence_state(const SequenceParams& seq);

/// |C_b|^2 after the third pulse.
double run_sequence(const SequenceParams& seq);

double run_sequence(const std::array<double, 3>& phases, double T, double tau_p, double rabi,
                    double delta, double t1);

/// Brute-force RK4 of i dC/dt = H_int(t)/hbar C in the lab-time interaction picture.
/// dt must satisfy dt <= 2 pi / (100 Omega_R).
TwoLevelState ode_oracle(const TwoLevelState& state, const PulseParams& pulse, double dt);

/// Largest step accepted by ode_oracle for this pulse.
double ode_max_step(const PulseParams& pulse);

/// Excited-state probability for each sequence in the batch (parameter sweep kernel).
std::vector<double> sweep_sequences(std::span<const SequenceParams> batch,
                                    Execution exec = Execution::Parallel);

}  // namespace gravsim::twolevel
