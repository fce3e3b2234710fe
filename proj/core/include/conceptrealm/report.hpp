#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace conceptrealm {

// Atomic file emission (temp + rename) under one output root, with a
// SHA-256 entry per file. write_manifest scans the root so the manifest
// covers every file present, whether written by this process or an
// earlier stage.
class OutputWriter {
 public:
  explicit OutputWriter(std::filesystem::path root);

  void write_file(const std::string& relpath, std::string_view bytes);
  // Writes <root>/manifest.json and returns its bytes.
  std::string write_manifest();

  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
};

struct ProjectSummary {
  std::string project;
  int age_years = 0;
  std::int64_t n_issues = 0;
  std::int64_t n_comments = 0;
  std::int64_t n_developers = 0;
  int chosen_k = 0;
  bool analyzable = true;
  // availability flags per analysis name (alignment, volatility, ...)
  std::map<std::string, bool> available;
};

struct BracketRow {
  int age = 0;  // clamped to [3,10]
  int projects = 0;
  std::int64_t issues = 0;
  std::int64_t comments = 0;
  std::int64_t devs = 0;
  double median_devs = 0.0;
};

std::vector<BracketRow> bracket_table(std::span<const ProjectSummary> summaries);

std::string summary_csv(std::span<const ProjectSummary> summaries);
std::string brackets_csv(std::span<const BracketRow> rows);

}  // namespace conceptrealm
