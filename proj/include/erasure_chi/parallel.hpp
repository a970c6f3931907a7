#pragma once

#include <cstddef>
#include <exception>

namespace erasure_chi {

/// Runs body(i) for i in [0, n), across OpenMP threads when `parallel` is
/// set. The first exception thrown by any iteration is rethrown after the
/// loop; iterations must write only to their own slots.
template <class Body>
void forEachIndex(std::size_t n, bool parallel, Body&& body) {
  std::exception_ptr failure;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(erasure_chi_for_each_index)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace erasure_chi
