#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace venuerec {

/// User judgments (history ratings and qrels) use a 0..4 scale.
inline constexpr int kMinUserRating = 0;
inline constexpr int kMaxUserRating = 4;
/// LBSN review stars use a 1..5 scale.
inline constexpr int kMinReviewRating = 1;
inline constexpr int kMaxReviewRating = 5;

inline constexpr std::size_t kMaxKeywordsPerVenue = 20;
inline constexpr std::size_t kMaxRankedListLength = 30;

enum class Polarity { negative, neutral, positive };

std::string_view to_string(Polarity p) noexcept;

/// 4-5 positive, 3 neutral, 1-2 negative. Throws RangeError off the scale.
Polarity polarity_of_review_rating(int rating);

/// 3-4 positive, 2 neutral, 0-1 negative. Throws RangeError off the scale.
Polarity polarity_of_user_rating(int rating);

struct Review {
  std::string venue_id;
  std::string author_id;
  std::string text;
  int rating = kMinReviewRating;
  std::int64_t timestamp = 0;
  std::int64_t author_review_count = 0;

  bool operator==(const Review&) const = default;
};

/// Category and keyword lists are sets: lowercase, trimmed, sorted, unique.
struct Venue {
  std::string id;
  std::string city;
  std::vector<std::string> categories_yelp;
  std::vector<std::string> categories_foursquare;
  std::vector<std::string> keywords;
  std::vector<Review> reviews;

  bool operator==(const Venue&) const = default;
};

struct RatedVenue {
  std::string venue_id;
  int rating = kMinUserRating;

  bool operator==(const RatedVenue&) const = default;
};

struct UserHistory {
  std::string user_id;
  std::vector<RatedVenue> rated_venues;
  std::optional<std::string> age_group;
  std::optional<std::string> gender;

  bool operator==(const UserHistory&) const = default;
};

struct RankingRequest {
  std::string user_id;
  std::string city;
  std::vector<std::string> candidates;

  bool operator==(const RankingRequest&) const = default;
};

/// Lowercases ASCII letters and trims surrounding whitespace.
std::string normalize_item(std::string_view item);

/// Normalizes every entry, drops empties, sorts, and removes duplicates.
std::vector<std::string> normalize_item_set(std::span<const std::string> items);

void validate_review(const Review& review);
void validate_venue(const Venue& venue);
void validate_user(const UserHistory& user);

}  // namespace venuerec
