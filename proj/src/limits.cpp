#include "cxtcat/limits.hpp"

#include <cstdlib>
#include <string>

namespace cxtcat {

const Limits& Limits::global() {
  static const Limits limits = [] {
    Limits l;
    if (const char* env = std::getenv("CXTCAT_MAX_SIZE")) {
      try {
        auto v = std::stoul(env);
        if (v > 0) l.max_size = v;
      } catch (...) {
        // Unparseable override: keep the default.
      }
    }
    return l;
  }();
  return limits;
}

}  // namespace cxtcat
