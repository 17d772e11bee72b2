#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "venuerec/collection.hpp"
#include "venuerec/features.hpp"

namespace fixture {

inline venuerec::Venue venue(std::string id, std::vector<std::string> keywords = {},
                             std::string city = "c1") {
  venuerec::Venue v;
  v.id = std::move(id);
  v.city = std::move(city);
  v.keywords = std::move(keywords);
  return v;
}

inline venuerec::Review review(const std::string& venue_id, std::string text, int rating,
                               std::int64_t timestamp = 0, std::int64_t author_count = 1) {
  venuerec::Review r;
  r.venue_id = venue_id;
  r.author_id = "a";
  r.text = std::move(text);
  r.rating = rating;
  r.timestamp = timestamp;
  r.author_review_count = author_count;
  return r;
}

inline venuerec::UserHistory user(std::string id,
                                  std::initializer_list<std::pair<const char*, int>> ratings) {
  venuerec::UserHistory u;
  u.user_id = std::move(id);
  for (const auto& [v, r] : ratings) u.rated_venues.push_back({v, r});
  return u;
}

inline void add(venuerec::Collection& c, venuerec::Venue v) {
  const std::string id = v.id;
  c.venues.emplace(id, std::move(v));
}

/// One query whose candidates carry the given feature rows and labels; venue
/// ids are "v00", "v01", ...
inline venuerec::QueryFeatures query(std::string user,
                                     const std::vector<std::vector<double>>& rows,
                                     const std::vector<int>& labels) {
  venuerec::QueryFeatures q;
  q.user_id = std::move(user);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    venuerec::FeatureVector fv;
    fv.user_id = q.user_id;
    fv.venue_id = (i < 10 ? "v0" : "v") + std::to_string(i);
    fv.values = rows[i];
    fv.label = labels[i];
    q.candidates.push_back(std::move(fv));
  }
  return q;
}

}  // namespace fixture
