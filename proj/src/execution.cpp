#include "emkdv/execution.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace emkdv {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace emkdv
