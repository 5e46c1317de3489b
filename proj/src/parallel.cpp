#include "acn/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace acn {

namespace {

int env_threads() {
  const char* v = std::getenv("AC_THREADS");
  if (v == nullptr) return 0;
  try {
    const int n = std::stoi(v);
    return n > 0 ? n : 0;
  } catch (...) {
    return 0;
  }
}

}  // namespace

void configure_threads() {
#ifdef _OPENMP
  if (const int n = env_threads(); n > 0) omp_set_num_threads(n);
#endif
}

int thread_count() {
#ifdef _OPENMP
  configure_threads();
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace acn
