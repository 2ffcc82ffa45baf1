#pragma once

// Execution policy for the data-parallel kernels.
//
// Every kernel has a serial reference path and an OpenMP path. Both write
// per-index results into preallocated storage and reduce with pairwise_sum
// afterwards, so the two paths return bit-identical values.

#include <cstddef>
#include <exception>

namespace gravsim {

enum class Execution { Serial, Parallel };

/// Number of OpenMP workers used by Execution::Parallel (1 without OpenMP).
int worker_count();

/// Sets the OpenMP worker count; n <= 0 restores the runtime default.
void set_worker_count(int n);

/// Calls fn(i) for i in [0, n). The parallel path keeps the first exception
/// thrown by any worker and rethrows it after the loop.
template <typename Fn>
void for_each_index(std::size_t n, Execution exec, Fn&& fn) {
  const auto count = static_cast<std::ptrdiff_t>(n);
  if (exec == Execution::Serial) {
    for (std::ptrdiff_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
    return;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(guided)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(gravsim_for_each_index)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace gravsim
