#include "gravsim/raman.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "gravsim/rk4.hpp"
#include "gravsim/twolevel.hpp"

namespace gravsim::raman {

namespace {

constexpr cplx kI{0.0, 1.0};

// Imaginary light shifts make the effective Hamiltonian non-Hermitian.
constexpr double kRealShiftTolerance = 1e-12;

double real_shift(cplx shift, const char* name) {
  if (std::abs(shift.imag()) > kRealShiftTolerance * std::max(1.0, std::abs(shift))) {
    throw InvalidParameterError(
        fmt::format("light shift {} = ({}, {}) is complex; the propagator needs real shifts", name,
                    shift.real(), shift.imag()));
  }
  return shift.real();
}

}  // namespace

void LaserPair::check_counter_propagating(double rel_tol) const {
  if (!(k1 * k2 < 0.0)) {
    throw InvalidParameterError(
        fmt::format("beams are not counter-propagating (k1={}, k2={})", k1, k2));
  }
  const double expected = 2.0 * std::abs(k1);
  if (std::abs(std::abs(k_eff()) - expected) > rel_tol * expected) {
    throw InvalidParameterError(fmt::format("|k_eff| = {} differs from 2|k1| = {} by more than {}",
                                            std::abs(k_eff()), expected, rel_tol));
  }
}

RamanDetunings detunings(const LaserPair& lasers, double p, const PhysicalConstants& atom,
                         const LevelFrequencies& levels) {
  atom.validate();
  const double hk1 = atom.hbar * lasers.k1;
  const double hkeff = atom.hbar * lasers.k_eff();
  const double scale = 2.0 * atom.atom_mass * atom.hbar;
  // |p|^2 - |p + hk1|^2 and |p + hk_eff|^2 - |p + hk1|^2, expanded to avoid cancellation.
  const double kin1 = -(2.0 * p * hk1 + hk1 * hk1) / scale;
  const double kin2 = (2.0 * p * (hkeff - hk1) + hkeff * hkeff - hk1 * hk1) / scale;
  RamanDetunings d;
  d.delta1 = lasers.omega1 - (levels.omega_i - levels.omega_a) + kin1;
  d.delta2 = lasers.omega2 - (levels.omega_i - levels.omega_b) + kin2;
  d.delta_two_photon = d.delta1 - d.delta2;
  return d;
}

double two_photon_detuning(const LaserPair& lasers, double p, const PhysicalConstants& atom,
                           double omega_ba) {
  atom.validate();
  const double k = lasers.k_eff();
  return lasers.omega1 - lasers.omega2 -
         (omega_ba + p * k / atom.atom_mass + atom.hbar * k * k / (2.0 * atom.atom_mass));
}

EffectiveParams effective_params(const LaserPair& lasers, double big_delta, EliminationForm form) {
  if (big_delta == 0.0 || !std::isfinite(big_delta)) {
    throw EliminationSingularityError(
        fmt::format("adiabatic elimination needs a finite nonzero Delta, got {}", big_delta));
  }
  const cplx gi = lasers.rabi_gi;
  const cplx ei = lasers.rabi_ei;
  EffectiveParams out;
  out.form = form;
  out.big_delta = big_delta;
  out.delta1 = big_delta;
  out.delta2 = big_delta;
  out.phi_eff = lasers.phi2 - lasers.phi1;
  out.adiabatic = std::abs(big_delta) >= 10.0 * std::max(std::abs(gi), std::abs(ei));
  if (form == EliminationForm::Standard) {
    out.omega_eff = gi * std::conj(ei) / (2.0 * big_delta);
    out.ac_g = std::norm(gi) / (4.0 * big_delta);
    out.ac_e = std::norm(ei) / (4.0 * big_delta);
  } else {
    // Printed with Delta2 in the ground shift; Delta1 ~ Delta2 = Delta here.
    out.omega_eff = gi * std::conj(ei) / (4.0 * big_delta);
    out.ac_e = gi * std::conj(ei) / (4.0 * big_delta);
    out.ac_g = ei * std::conj(gi) / (4.0 * big_delta);
  }
  out.delta_ac = out.ac_e - out.ac_g;
  return out;
}

EffectiveParams effective_params(const LaserPair& lasers, const RamanDetunings& det,
                                 EliminationForm form) {
  EffectiveParams out = effective_params(lasers, det.mean(), form);
  out.delta1 = det.delta1;
  out.delta2 = det.delta2;
  return out;
}

Matrix2c raman_propagator(const EffectiveParams& params, double delta, double t0,
                          double duration) {
  if (!(duration >= 0.0)) {
    throw InvalidParameterError(fmt::format("pulse duration must be >= 0, got {}", duration));
  }
  const double ac_g = real_shift(params.ac_g, "ac_g");
  const double ac_e = real_shift(params.ac_e, "ac_e");
  const double omega = std::abs(params.omega_eff);
  const double arg = omega > 0.0 ? std::arg(params.omega_eff) : 0.0;
  const cplx global = std::exp(-kI * (0.5 * (ac_e + ac_g) * duration));
  return global * twolevel::square_pulse_propagator(omega, params.phi_eff - arg, delta,
                                                    delta - (ac_e - ac_g), t0, duration);
}

TwoLevelState raman_pulse(const TwoLevelState& state, const EffectiveParams& params, double delta,
                          double t0, double duration) {
  if (duration == 0.0) return state;
  return TwoLevelState::from_vector(raman_propagator(params, delta, t0, duration) *
                                    state.vector());
}

double raman_sequence_probability(double delta, double tau_p, double dphi_laser) {
  return twolevel::mach_zehnder_probability(delta, tau_p, dphi_laser);
}

double three_level_max_step(const LaserPair& lasers, const RamanDetunings& det) {
  const double fastest = std::max({std::abs(det.delta1), std::abs(det.delta2),
                                   std::abs(lasers.rabi_gi), std::abs(lasers.rabi_ei)});
  return fastest > 0.0 ? kTwoPi / (100.0 * fastest) : std::numeric_limits<double>::infinity();
}

ThreeLevelState three_level_ode_oracle(const ThreeLevelState& state, const LaserPair& lasers,
                                       const RamanDetunings& det, double t0, double duration,
                                       double dt, double& max_intermediate) {
  if (!(duration >= 0.0)) {
    throw InvalidParameterError(fmt::format("duration must be >= 0, got {}", duration));
  }
  const double max_step = three_level_max_step(lasers, det);
  if (!(dt > 0.0) || dt > max_step * (1.0 + 1e-12)) {
    throw StepSizeError(fmt::format("dt = {} must lie in (0, {}]", dt, max_step));
  }
  using Vec3 = Eigen::Vector3cd;
  const cplx gi = lasers.rabi_gi;
  const cplx ei = lasers.rabi_ei;
  auto rhs = [&](double t, const Vec3& c) -> Vec3 {
    const cplx w1 = std::exp(kI * (det.delta1 * t - lasers.phi1));
    const cplx w2 = std::exp(kI * (det.delta2 * t - lasers.phi2));
    Vec3 d;
    d(0) = -kI * 0.5 * std::conj(gi) * w1 * c(1);
    d(1) = -kI * 0.5 * (gi * std::conj(w1) * c(0) + ei * std::conj(w2) * c(2));
    d(2) = -kI * 0.5 * std::conj(ei) * w2 * c(1);
    return d;
  };

  Vec3 y(state.c_g, state.c_i, state.c_e);
  max_intermediate = std::norm(y(1));
  if (duration > 0.0) {
    const auto steps = static_cast<std::size_t>(std::ceil(duration / dt - 1e-12));
    const double h = duration / static_cast<double>(steps);
    for (std::size_t n = 0; n < steps; ++n) {
      y = rk4_integrate(y, rhs, t0 + static_cast<double>(n) * h, h, h);
      max_intermediate = std::max(max_intermediate, std::norm(y(1)));
    }
  }
  ThreeLevelState out;
  out.c_g = y(0);
  out.c_i = y(1);
  out.c_e = y(2);
  out.p = state.p;
  return out;
}

ThreeLevelState three_level_ode_oracle(const ThreeLevelState& state, const LaserPair& lasers,
                                       const RamanDetunings& det, double t0, double duration,
                                       double dt) {
  double ignored = 0.0;
  return three_level_ode_oracle(state, lasers, det, t0, duration, dt, ignored);
}

Branch transition(const Branch& branch, double k_eff, double hbar) {
  if (branch.level == Level::Ground) return {Level::Excited, branch.p + hbar * k_eff};
  return {Level::Ground, branch.p - hbar * k_eff};
}

std::array<Branch, 4> mach_zehnder_branches(double p0, double k_eff, double hbar) {
  const Branch start{Level::Ground, p0};
  // First beam splitter: the upper arm absorbs the kick, the lower arm does not.
  Branch upper = transition(start, k_eff, hbar);
  Branch lower = start;
  // Mirror: both arms switch.
  upper = transition(upper, k_eff, hbar);
  lower = transition(lower, k_eff, hbar);
  // Second beam splitter: each arm either switches or stays.
  const Branch upper_switched = transition(upper, k_eff, hbar);
  const Branch lower_switched = transition(lower, k_eff, hbar);
  return {upper_switched, upper, lower, lower_switched};
}

}  // namespace gravsim::raman
