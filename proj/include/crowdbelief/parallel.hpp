#pragma once

#include <cstdint>
#include <exception>

namespace crowdbelief {

// Every parallel kernel in the library also runs serially through the same
// code path; results must be bit-identical either way (loops write into
// pre-sized slots, reductions happen serially in canonical order).
enum class Execution { serial, parallel };

// Exceptions thrown by f are caught inside the parallel region (letting one
// escape an OpenMP loop would terminate the process) and one of them is
// rethrown once all iterations finish.
template <class F>
void parallel_for(std::size_t n, Execution exec, F&& f) {
  if (exec == Execution::parallel) {
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      try {
        f(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical
        {
          if (!err) err = std::current_exception();
        }
      }
    }
    if (err) std::rethrow_exception(err);
  } else {
    for (std::size_t i = 0; i < n; ++i) f(i);
  }
}

// Mixer used to derive independent sub-seeds (splitmix64).
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return seed ^ mix_seed((a << 32) ^ b);
}

}  // namespace crowdbelief
