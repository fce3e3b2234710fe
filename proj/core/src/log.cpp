#include "conceptrealm/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

namespace conceptrealm {

int log_level() {
  static int level = [] {
    const char* v = std::getenv("CONCEPT_REALM_LOG");
    if (!v || !*v) return 0;
    return std::atoi(v);
  }();
  return level;
}

void log_info(std::string_view message) {
  if (log_level() >= 1) std::fprintf(stderr, "[info] %.*s\n", static_cast<int>(message.size()), message.data());
}

void log_debug(std::string_view message) {
  if (log_level() >= 2) std::fprintf(stderr, "[debug] %.*s\n", static_cast<int>(message.size()), message.data());
}

}  // namespace conceptrealm
