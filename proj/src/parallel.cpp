#include "hlskit/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hlskit {

int worker_count() noexcept {
#ifdef _OPENMP
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("HLSKIT_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0 && cap < n) n = static_cast<int>(cap);
  }
  return n < 1 ? 1 : n;
#else
  return 1;
#endif
}

}  // namespace hlskit
