#include "parallel.hpp"

#include <cstdlib>
#include <string>

namespace orbnet::detail {

unsigned worker_count() {
  if (const char* env = std::getenv("ORBNET_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace orbnet::detail
