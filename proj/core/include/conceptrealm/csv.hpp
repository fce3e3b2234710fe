#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace conceptrealm {

// CSV dialect: UTF-8, comma separator, "\n" line endings, RFC-4180 quoting.
std::string csv_escape(std::string_view field);

// 17 significant digits (%.17g): round-trip exact for doubles.
std::string csv_double(double value);
std::string csv_int(std::int64_t value);

}  // namespace conceptrealm
