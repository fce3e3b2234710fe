#pragma once

#include <string>
#include <string_view>

namespace conceptrealm {

// Porter stemmer (Porter 1980), steps 1a through 5b of the published
// algorithm, including the reference implementation's rule that words of
// length <= 2 pass through unchanged. Input must be lowercase ASCII
// letters. Not idempotent on all inputs by design of the algorithm.
std::string porter_stem(std::string_view token);

}  // namespace conceptrealm
