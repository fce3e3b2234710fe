#pragma once

#include <string>
#include <string_view>

namespace conceptrealm {

// FIPS 180-4 SHA-256, lowercase hex digest. Self-contained; used for the
// output manifest and model identity hashes.
std::string sha256_hex(std::string_view bytes);

}  // namespace conceptrealm
