#include "conceptrealm/report.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <system_error>

#include <nlohmann/json.hpp>

#include "conceptrealm/corpus.hpp"
#include "conceptrealm/csv.hpp"
#include "conceptrealm/errors.hpp"
#include "conceptrealm/hash.hpp"
#include "conceptrealm/stats.hpp"

namespace conceptrealm {

using nlohmann::json;

OutputWriter::OutputWriter(std::filesystem::path root) : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) throw DataError("cannot create output directory " + root_.string() + ": " + ec.message());
}

void OutputWriter::write_file(const std::string& relpath, std::string_view bytes) {
  std::filesystem::path target = root_ / relpath;
  std::error_code ec;
  std::filesystem::create_directories(target.parent_path(), ec);
  if (ec) throw DataError("cannot create " + target.parent_path().string() + ": " + ec.message());

  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp, ec);
      throw DataError("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw DataError("cannot move " + tmp.string() + " into place: " + ec.message());
  }
}

std::string OutputWriter::write_manifest() {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root_)) {
    if (!entry.is_regular_file()) continue;
    auto rel = std::filesystem::relative(entry.path(), root_);
    if (rel == "manifest.json") continue;
    files.push_back(rel);
  }
  std::sort(files.begin(), files.end());

  json manifest;
  manifest["format"] = "conceptrealm-manifest";
  manifest["version"] = 1;
  manifest["files"] = json::array();
  for (const auto& rel : files) {
    std::ifstream in(root_ / rel, std::ios::binary);
    if (!in) throw DataError("cannot hash " + (root_ / rel).string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    json entry;
    entry["path"] = rel.generic_string();
    entry["bytes"] = bytes.size();
    entry["sha256"] = sha256_hex(bytes);
    manifest["files"].push_back(std::move(entry));
  }
  std::string out = manifest.dump(2);
  out.push_back('\n');
  write_file("manifest.json", out);
  return out;
}

std::vector<BracketRow> bracket_table(std::span<const ProjectSummary> summaries) {
  std::map<int, std::vector<const ProjectSummary*>> by_age;
  for (const auto& s : summaries) by_age[clamp_age_bracket(s.age_years)].push_back(&s);

  std::vector<BracketRow> rows;
  for (auto& [age, group] : by_age) {
    BracketRow row;
    row.age = age;
    row.projects = static_cast<int>(group.size());
    std::vector<double> devs;
    for (const auto* s : group) {
      row.issues += s->n_issues;
      row.comments += s->n_comments;
      row.devs += s->n_developers;
      devs.push_back(static_cast<double>(s->n_developers));
    }
    row.median_devs = median(std::move(devs));
    rows.push_back(row);
  }
  return rows;
}

std::string summary_csv(std::span<const ProjectSummary> summaries) {
  std::string out =
      "project,age_years,n_issues,n_comments,n_developers,chosen_k,analyzable,analyses\n";
  for (const auto& s : summaries) {
    std::string analyses;
    for (const auto& [name, ok] : s.available) {
      if (!ok) continue;
      if (!analyses.empty()) analyses.push_back(';');
      analyses += name;
    }
    out += csv_escape(s.project) + "," + csv_int(s.age_years) + "," + csv_int(s.n_issues) + "," +
           csv_int(s.n_comments) + "," + csv_int(s.n_developers) + "," + csv_int(s.chosen_k) +
           "," + (s.analyzable ? "1" : "0") + "," + csv_escape(analyses) + "\n";
  }
  return out;
}

std::string brackets_csv(std::span<const BracketRow> rows) {
  std::string out = "age,projects,issues,comments,devs,median_devs\n";
  for (const auto& r : rows) {
    out += csv_int(r.age) + "," + csv_int(r.projects) + "," + csv_int(r.issues) + "," +
           csv_int(r.comments) + "," + csv_int(r.devs) + "," + csv_double(r.median_devs) + "\n";
  }
  return out;
}

}  // namespace conceptrealm
