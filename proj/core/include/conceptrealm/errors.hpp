#pragma once

#include <stdexcept>
#include <string>

namespace conceptrealm {

// Bad input data (unreadable files, schema violations, contract misuse).
// The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A project whose filtered vocabulary came out empty; it is skipped, not
// fatal for the run.
class NotAnalyzableError : public DataError {
 public:
  explicit NotAnalyzableError(const std::string& what) : DataError(what) {}
};

}  // namespace conceptrealm
