#include "gravsim/core.hpp"

#include <fmt/format.h>

#include <cmath>

#include "gravsim/parallel.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace gravsim {

void PhysicalConstants::validate() const {
  if (!(hbar > 0.0) || !(default_g > 0.0) || !(atom_mass > 0.0)) {
    throw InvalidParameterError(fmt::format(
        "physical constants must be strictly positive (hbar={}, g={}, mass={})", hbar, default_g,
        atom_mass));
  }
}

void PulseParams::validate() const {
  if (!(duration >= 0.0)) {
    throw InvalidParameterError(fmt::format("pulse duration must be >= 0, got {}", duration));
  }
  if (!(rabi_mod >= 0.0)) {
    throw InvalidParameterError(fmt::format("Rabi modulus must be >= 0, got {}", rabi_mod));
  }
}

double state_probability(const TwoLevelState& state, Level which) {
  const double norm = state.norm_squared();
  if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
    throw InvalidStateError(fmt::format("state norm {} deviates from 1 by more than {}", norm,
                                        kNormTolerance));
  }
  return which == Level::Ground ? std::norm(state.c_a) : std::norm(state.c_b);
}

double fidelity(const TwoLevelState& a, const TwoLevelState& b) {
  return std::norm(a.vector().dot(b.vector()));
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 32;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

int worker_count() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_worker_count(int n) {
#if defined(_OPENMP)
  static const int runtime_default = omp_get_max_threads();
  omp_set_num_threads(n > 0 ? n : runtime_default);
#else
  (void)n;
#endif
}

}  // namespace gravsim
