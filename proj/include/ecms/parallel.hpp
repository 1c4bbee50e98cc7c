#pragma once

#include <cstddef>

namespace ecms {

/// Serial is the reference implementation for every parallel kernel; tests
/// compare the two and tools/bench times them.
enum class Exec { Serial, Parallel };

template <class F>
void parallel_for(Exec exec, std::ptrdiff_t n, F&& body) {
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
  }
}

}  // namespace ecms
