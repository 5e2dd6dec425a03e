#include "nlab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace nlab::parallel {

int thread_cap() {
  static const int cap = [] {
    const char* env = std::getenv("NOETHER_LAB_THREADS");
    if (env == nullptr || *env == '\0') return 0;
    try {
      const int v = std::stoi(env);
      return v > 0 ? v : 0;
    } catch (...) {
      return 0;
    }
  }();
  return cap;
}

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

}  // namespace nlab::parallel
