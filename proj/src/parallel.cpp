#include "kneserlab/parallel.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kneserlab {

int resolve_threads(Threads t) noexcept {
  if (t.count > 0) return t.count;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int threads_from_env() noexcept {
  const char* value = std::getenv("KNESER_LAB_THREADS");
  if (value == nullptr) return 0;
  char* end = nullptr;
  const long parsed = std::strtol(value, &end, 10);
  if (end == value || *end != '\0' || parsed <= 0 || parsed > 4096) return 0;
  return static_cast<int>(parsed);
}

}  // namespace kneserlab
