#include "qzeta/parallel.hpp"

#include <cstdlib>
#include <string>

namespace qzeta {

unsigned max_threads() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("QZETA_MAX_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1 && static_cast<unsigned long>(cap) < n) n = static_cast<unsigned>(cap);
    } catch (const std::exception&) {
      // unparsable cap: ignore
    }
  }
  return n;
}

}  // namespace qzeta
