#include "gravsim/twolevel.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

#include "gravsim/rk4.hpp"

namespace gravsim::twolevel {

namespace {

constexpr cplx kI{0.0, 1.0};

}  // namespace

Matrix2c interaction_hamiltonian(const PulseParams& pulse, double t, double hbar) {
  const cplx coupling = pulse.rabi() * std::exp(-kI * (pulse.detuning * t + pulse.laser_phase));
  Matrix2c h;
  h << cplx{0.0}, coupling, std::conj(coupling), cplx{0.0};
  return 0.5 * hbar * h;
}

RotatingFrameHamiltonian RotatingFrameHamiltonian::from_pulse(const PulseParams& pulse) {
  return {pulse.detuning, pulse.rabi_mod, pulse.rabi_arg, pulse.laser_phase};
}

Matrix2c RotatingFrameHamiltonian::matrix(double hbar) const {
  const cplx off = std::polar(rabi_mod, -coupling_phase());
  Matrix2c h;
  h << cplx{-delta}, off, std::conj(off), cplx{delta};
  return 0.5 * hbar * h;
}

Matrix2c rotating_frame_hamiltonian(const PulseParams& pulse, double hbar) {
  return RotatingFrameHamiltonian::from_pulse(pulse).matrix(hbar);
}

MixingAngle mixing_angle(double delta, double rabi) {
  if (!(rabi >= 0.0)) {
    throw InvalidParameterError(fmt::format("Rabi modulus must be >= 0, got {}", rabi));
  }
  if (rabi == 0.0 && delta == 0.0) {
    throw DegenerateDriveError("mixing angle undefined for Omega = delta = 0");
  }
  return {std::atan2(rabi, -delta), std::hypot(rabi, delta)};
}

Eigensystem eigensystem(const RotatingFrameHamiltonian& h, double hbar) {
  const MixingAngle angle = mixing_angle(h.delta, h.rabi_mod);
  const double c = std::cos(0.5 * angle.theta);
  const double s = std::sin(0.5 * angle.theta);
  const cplx down = std::polar(1.0, -0.5 * h.coupling_phase());  // multiplies |b>
  const cplx up = std::polar(1.0, 0.5 * h.coupling_phase());     // multiplies |a>
  Eigensystem es;
  es.lambda_plus = 0.5 * hbar * angle.omega_r;
  es.lambda_minus = -0.5 * hbar * angle.omega_r;
  es.v_plus = Vector2c(c * down, s * up);
  es.v_minus = Vector2c(-s * down, c * up);
  return es;
}

Matrix2c projector_plus_closed_form(double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Matrix2c p;
  p << cplx{c * c}, 0.5 * std::sin(theta) * std::polar(1.0, -phi),
      0.5 * std::sin(theta) * std::polar(1.0, phi), cplx{s * s};
  return p;
}

Matrix2c projector_minus_closed_form(double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Matrix2c p;
  p << cplx{s * s}, -0.5 * std::sin(theta) * std::polar(1.0, -phi),
      -0.5 * std::sin(theta) * std::polar(1.0, phi), cplx{c * c};
  return p;
}

Matrix2c square_pulse_propagator(double rabi_mod, double coupling_phase, double frame_detuning,
                                 double coupling_detuning, double t0, double tau) {
  const double omega_r = std::hypot(rabi_mod, coupling_detuning);
  const double half_angle = 0.5 * omega_r * tau;
  const double c = std::cos(half_angle);
  // sin(theta) sin(Omega_R tau/2) and cos(theta) sin(Omega_R tau/2), finite as Omega_R -> 0.
  const double sin_part = omega_r > 0.0 ? rabi_mod / omega_r * std::sin(half_angle) : 0.0;
  const double cos_part = omega_r > 0.0 ? -coupling_detuning / omega_r * std::sin(half_angle) : 0.0;

  const cplx frame_minus = std::exp(-kI * (0.5 * frame_detuning * tau));
  const cplx frame_plus = std::conj(frame_minus);
  const cplx chi = std::exp(-kI * (frame_detuning * t0 + coupling_phase));

  Matrix2c u;
  u(0, 0) = frame_minus * (c - kI * cos_part);
  u(0, 1) = -kI * frame_minus * chi * sin_part;
  u(1, 0) = -kI * frame_plus * std::conj(chi) * sin_part;
  u(1, 1) = frame_plus * (c + kI * cos_part);
  return u;
}

Matrix2c pulse_propagator(const PulseParams& pulse) {
  pulse.validate();
  return square_pulse_propagator(pulse.rabi_mod, pulse.laser_phase - pulse.rabi_arg,
                                 pulse.detuning, pulse.detuning, pulse.start_time,
                                 pulse.duration);
}

TwoLevelState evolve_pulse(const TwoLevelState& state, const PulseParams& pulse) {
  if (pulse.duration == 0.0) return state;
  return TwoLevelState::from_vector(pulse_propagator(pulse) * state.vector());
}

TwoLevelState evolve_free(const TwoLevelState& state, double duration) {
  if (!(duration >= 0.0)) {
    throw InvalidParameterError(fmt::format("free evolution needs duration >= 0, got {}", duration));
  }
  return state;
}

double mach_zehnder_probability(double delta, double tau_p, double dphi_laser) {
  return 0.5 * (1.0 - std::cos(dphi_laser - 0.5 * delta * tau_p));
}

void SequenceParams::validate() const {
  if (!(T >= 0.0) || !(tau_p >= 0.0)) {
    throw InvalidSequenceError(
        fmt::format("sequence needs T >= 0 and tau_p >= 0 (T={}, tau_p={})", T, tau_p));
  }
  if (!(rabi >= 0.0)) {
    throw InvalidSequenceError(fmt::format("sequence Rabi frequency must be >= 0, got {}", rabi));
  }
}

std::array<PulseParams, 3> SequenceParams::pulses() const {
  validate();
  double t2 = t1 + T + 0.5 * tau_p;
  double t3 = t1 + 2.0 * T + 1.5 * tau_p;
  if (timeline == PulseTimeline::UniformStarts) {
    t2 = t1 + T;
    t3 = t1 + 2.0 * T;
  }
  auto make = [&](double phase, double start, double duration) {
    PulseParams p;
    p.rabi_mod = rabi;
    p.detuning = delta;
    p.laser_phase = phase;
    p.start_time = start;
    p.duration = duration;
    return p;
  };
  return {make(phases[0], t1, 0.5 * tau_p), make(phases[1], t2, tau_p),
          make(phases[2], t3, 0.5 * tau_p)};
}

TwoLevelState run_sequence_state(const SequenceParams& seq) {
  const auto pulses = seq.pulses();
  TwoLevelState state = TwoLevelState::ground();
  state = evolve_pulse(state, pulses[0]);
  state = evolve_free(state, pulses[1].start_time - (pulses[0].start_time + pulses[0].duration));
  state = evolve_pulse(state, pulses[1]);
  state = evolve_free(state, pulses[2].start_time - (pulses[1].start_time + pulses[1].duration));
  state = evolve_pulse(state, pulses[2]);
  return state;
}

double run_sequence(const SequenceParams& seq) {
  return std::norm(run_sequence_state(seq).c_b);
}

double run_sequence(const std::array<double, 3>& phases, double T, double tau_p, double rabi,
                    double delta, double t1) {
  SequenceParams seq;
  seq.phases = phases;
  seq.T = T;
  seq.tau_p = tau_p;
  seq.rabi = rabi;
  seq.delta = delta;
  seq.t1 = t1;
  return run_sequence(seq);
}

double ode_max_step(const PulseParams& pulse) {
  const double omega_r = std::hypot(pulse.rabi_mod, pulse.detuning);
  return omega_r > 0.0 ? kTwoPi / (100.0 * omega_r) : std::numeric_limits<double>::infinity();
}

TwoLevelState ode_oracle(const TwoLevelState& state, const PulseParams& pulse, double dt) {
  pulse.validate();
  const double max_step = ode_max_step(pulse);
  if (!(dt > 0.0) || dt > max_step * (1.0 + 1e-12)) {
    throw StepSizeError(fmt::format("dt = {} must lie in (0, {}] to resolve Omega_R", dt,
                                    max_step));
  }
  const cplx rabi = pulse.rabi();
  auto rhs = [&](double t, const Vector2c& c) -> Vector2c {
    const cplx coupling = rabi * std::exp(-kI * (pulse.detuning * t + pulse.laser_phase));
    return Vector2c(-kI * 0.5 * coupling * c(1), -kI * 0.5 * std::conj(coupling) * c(0));
  };
  return TwoLevelState::from_vector(
      rk4_integrate(state.vector(), rhs, pulse.start_time, pulse.duration, dt));
}

std::vector<double> sweep_sequences(std::span<const SequenceParams> batch, Execution exec) {
  std::vector<double> out(batch.size());
  for_each_index(batch.size(), exec, [&](std::size_t i) { out[i] = run_sequence(batch[i]); });
  return out;
}

}  // namespace gravsim::twolevel
