#pragma once

#include <string_view>

namespace conceptrealm {

// Verbosity comes from the CONCEPT_REALM_LOG environment variable
// (0 = quiet, 1 = info, 2 = debug; default 0). Logging never influences
// computation or output files.
int log_level();
void log_info(std::string_view message);
void log_debug(std::string_view message);

}  // namespace conceptrealm
