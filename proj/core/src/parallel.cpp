#include "sburgers/parallel.hpp"

#include <cstdlib>
#include <string>

namespace sburgers {

int worker_count(std::size_t jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  int cap = static_cast<int>(hw);
  if (const char* env = std::getenv("SBURGERS_THREADS")) {
    try {
      const int requested = std::stoi(env);
      if (requested >= 1) cap = requested;
    } catch (const std::exception&) {
      // Unparsable values fall back to hardware concurrency.
    }
  }
  if (jobs < static_cast<std::size_t>(cap)) cap = static_cast<int>(jobs);
  return cap < 1 ? 1 : cap;
}

}  // namespace sburgers
