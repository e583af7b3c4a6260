#pragma once

#include <cstddef>

namespace adi {

// Execution policy for the data-parallel kernels. Every kernel computes one
// result slot per index and reduces serially afterwards, so both policies
// produce bitwise identical output.
enum class Exec { serial, openmp };

// `body(i)` must not throw; kernels catch per item and record the failure.
template <class Body>
void parallel_for(Exec exec, std::size_t n, Body&& body) {
  if (exec == Exec::openmp) {
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) body(i);
  }
}

}  // namespace adi
