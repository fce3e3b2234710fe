#pragma once

// Shared helpers for building hand-crafted realms and corpora in tests.

#include <string>
#include <vector>

#include "conceptrealm/realm.hpp"

namespace test_support {

inline conceptrealm::UtcTime ts(const std::string& iso) {
  auto t = conceptrealm::parse_iso8601(iso);
  REQUIRE(t.has_value());
  return *t;
}

inline conceptrealm::RealmEntry entry(std::string id, std::string dev, const std::string& iso,
                                      std::vector<double> weights) {
  conceptrealm::RealmEntry e;
  e.id = std::move(id);
  e.dev = std::move(dev);
  e.ts = ts(iso);
  e.weights = std::move(weights);
  return e;
}

// K inferred from the first weight vector.
inline conceptrealm::ConceptRealm make_realm(std::vector<conceptrealm::RealmEntry> issues,
                                             std::vector<conceptrealm::RealmEntry> comments,
                                             const std::string& project = "test") {
  conceptrealm::ConceptRealm realm;
  realm.project = project;
  realm.k = static_cast<int>(issues.empty() ? comments.front().weights.size()
                                            : issues.front().weights.size());
  realm.issues = std::move(issues);
  realm.comments = std::move(comments);
  return realm;
}

}  // namespace test_support
