#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "venuerec/collection.hpp"

namespace venuerec {

/// Parameters of the planted-preference generator.
///
/// Every user carries a latent preference vector over `preference_dimensions`
/// topics and every venue a topic mixture. Ratings grow with their dot
/// product; keywords, categories and review words are drawn from
/// topic-specific pools, review words additionally split by polarity.
struct SyntheticSpec {
  int n_users = 20;
  int n_venues = 300;
  int n_keywords_vocab = 400;
  int n_categories_vocab = 48;
  int reviews_per_venue_min = 4;
  int reviews_per_venue_max = 16;
  int preference_dimensions = 8;
  std::uint64_t seed = 7;
  int n_cities = 2;
  int history_size = 60;
  int candidates_per_user = 30;

  /// Throws ConfigError when a count is below 1 or a range is inverted.
  void validate() const;
};

struct SyntheticDataset {
  Collection collection;
  std::map<std::string, std::vector<double>> user_preferences;
  std::map<std::string, std::vector<double>> venue_topics;
};

/// Deterministic in `spec`: equal specs give equal datasets.
SyntheticDataset generate_synthetic_dataset(const SyntheticSpec& spec);

Collection generate_synthetic(const SyntheticSpec& spec);

}  // namespace venuerec
