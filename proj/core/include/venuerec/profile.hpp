#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "venuerec/collection.hpp"
#include "venuerec/random.hpp"

namespace venuerec {

enum class ItemSource { keywords, categories_yelp, categories_foursquare };

std::string_view to_string(ItemSource source) noexcept;

/// Maps a venue to its item set for one source.
struct ItemExtractor {
  ItemSource source = ItemSource::keywords;

  /// Normalized, unique, sorted items (an item counts once per venue).
  std::vector<std::string> items(const Venue& venue) const;
};

/// Exact rational p/q.
struct Fraction {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;

  double value() const {
    return denominator == 0 ? 0.0 : static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  /// Compares by cross-multiplication, so 1/2 == 2/4.
  bool same_value(const Fraction& other) const {
    return numerator * other.denominator == other.numerator * denominator;
  }
};

/// Positive/negative user-level normalized frequencies stored as integer
/// occurrence counts over a shared denominator (all item occurrences across
/// the whole history, neutral venues included).
struct FrequencyProfile {
  std::map<std::string, std::int64_t, std::less<>> positive_counts;
  std::map<std::string, std::int64_t, std::less<>> negative_counts;
  std::int64_t denominator = 0;

  bool degenerate() const noexcept { return denominator == 0; }

  Fraction positive(std::string_view item) const;
  Fraction negative(std::string_view item) const;
  double positive_freq(std::string_view item) const { return positive(item).value(); }
  double negative_freq(std::string_view item) const { return negative(item).value(); }

  /// Union of items present in either profile, sorted.
  std::vector<std::string> items() const;

  bool operator==(const FrequencyProfile&) const = default;
};

/// Throws ValidationError when a history venue does not resolve. An empty
/// history yields a degenerate profile.
FrequencyProfile build_profile(const UserHistory& history, const Collection& collection,
                               const ItemExtractor& extractor);

/// Σ over candidate items of cf⁺ − cf⁻, exactly. Degenerate profiles give 0.
Fraction frequency_score_exact(const FrequencyProfile& profile,
                               std::span<const std::string> candidate_items);

double frequency_score(const FrequencyProfile& profile,
                       std::span<const std::string> candidate_items);

/// One score per request candidate.
std::map<std::string, double> score_all(const UserHistory& user, const RankingRequest& request,
                                        const Collection& collection,
                                        const ItemExtractor& extractor);

/// Keeps only the listed items; the denominator is unchanged.
FrequencyProfile restrict_profile(const FrequencyProfile& profile,
                                  std::span<const std::string> keep);

/// The k items with the highest cf⁺ + cf⁻, ties broken lexicographically.
std::vector<std::string> most_frequent_items(const FrequencyProfile& profile, std::size_t k);

/// k items drawn uniformly without replacement from the profile.
std::vector<std::string> random_items(const FrequencyProfile& profile, std::size_t k, Rng& rng);

}  // namespace venuerec
