#include "venuerec/profile.hpp"

#include <algorithm>
#include <set>

#include "venuerec/error.hpp"

namespace venuerec {

namespace {

std::int64_t count_of(const std::map<std::string, std::int64_t, std::less<>>& counts,
                      std::string_view item) {
  const auto it = counts.find(item);
  return it == counts.end() ? 0 : it->second;
}

}  // namespace

std::string_view to_string(ItemSource source) noexcept {
  switch (source) {
    case ItemSource::keywords: return "keywords";
    case ItemSource::categories_yelp: return "categories_yelp";
    case ItemSource::categories_foursquare: return "categories_foursquare";
  }
  return "unknown";
}

std::vector<std::string> ItemExtractor::items(const Venue& venue) const {
  switch (source) {
    case ItemSource::keywords: return normalize_item_set(venue.keywords);
    case ItemSource::categories_yelp: return normalize_item_set(venue.categories_yelp);
    case ItemSource::categories_foursquare: return normalize_item_set(venue.categories_foursquare);
  }
  return {};
}

Fraction FrequencyProfile::positive(std::string_view item) const {
  return {count_of(positive_counts, item), denominator};
}

Fraction FrequencyProfile::negative(std::string_view item) const {
  return {count_of(negative_counts, item), denominator};
}

std::vector<std::string> FrequencyProfile::items() const {
  std::vector<std::string> out;
  for (const auto& [item, n] : positive_counts) out.push_back(item);
  for (const auto& [item, n] : negative_counts) {
    if (!positive_counts.contains(item)) out.push_back(item);
  }
  std::sort(out.begin(), out.end());
  return out;
}

FrequencyProfile build_profile(const UserHistory& history, const Collection& collection,
                               const ItemExtractor& extractor) {
  FrequencyProfile profile;
  for (const auto& rated : history.rated_venues) {
    const Venue& venue = collection.venue(rated.venue_id);
    const auto items = extractor.items(venue);
    profile.denominator += static_cast<std::int64_t>(items.size());
    const Polarity polarity = polarity_of_user_rating(rated.rating);
    if (polarity == Polarity::neutral) continue;
    auto& counts =
        polarity == Polarity::positive ? profile.positive_counts : profile.negative_counts;
    for (const auto& item : items) ++counts[item];
  }
  return profile;
}

Fraction frequency_score_exact(const FrequencyProfile& profile,
                               std::span<const std::string> candidate_items) {
  if (profile.degenerate()) return {0, 1};
  std::set<std::string_view> unique(candidate_items.begin(), candidate_items.end());
  std::int64_t numerator = 0;
  for (const auto item : unique) {
    numerator += count_of(profile.positive_counts, item) - count_of(profile.negative_counts, item);
  }
  return {numerator, profile.denominator};
}

double frequency_score(const FrequencyProfile& profile,
                       std::span<const std::string> candidate_items) {
  return frequency_score_exact(profile, candidate_items).value();
}

std::map<std::string, double> score_all(const UserHistory& user, const RankingRequest& request,
                                        const Collection& collection,
                                        const ItemExtractor& extractor) {
  const FrequencyProfile profile = build_profile(user, collection, extractor);
  std::map<std::string, double> scores;
  for (const auto& id : request.candidates) {
    scores[id] = frequency_score(profile, extractor.items(collection.venue(id)));
  }
  return scores;
}

FrequencyProfile restrict_profile(const FrequencyProfile& profile,
                                  std::span<const std::string> keep) {
  FrequencyProfile out;
  out.denominator = profile.denominator;
  for (const auto& item : keep) {
    if (const auto n = count_of(profile.positive_counts, item); n > 0) out.positive_counts[item] = n;
    if (const auto n = count_of(profile.negative_counts, item); n > 0) out.negative_counts[item] = n;
  }
  return out;
}

std::vector<std::string> most_frequent_items(const FrequencyProfile& profile, std::size_t k) {
  std::vector<std::pair<std::int64_t, std::string>> ranked;
  for (auto& item : profile.items()) {
    const auto total =
        count_of(profile.positive_counts, item) + count_of(profile.negative_counts, item);
    ranked.emplace_back(total, std::move(item));
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i) out.push_back(ranked[i].second);
  return out;
}

std::vector<std::string> random_items(const FrequencyProfile& profile, std::size_t k, Rng& rng) {
  auto items = profile.items();
  rng.shuffle(std::span<std::string>(items));
  if (items.size() > k) items.resize(k);
  std::sort(items.begin(), items.end());
  return items;
}

}  // namespace venuerec
