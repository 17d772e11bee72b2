#include "venuerec/types.hpp"

#include <algorithm>
#include <cctype>

#include "venuerec/error.hpp"

namespace venuerec {

std::string_view to_string(Polarity p) noexcept {
  switch (p) {
    case Polarity::negative: return "negative";
    case Polarity::neutral: return "neutral";
    case Polarity::positive: return "positive";
  }
  return "unknown";
}

Polarity polarity_of_review_rating(int rating) {
  if (rating < kMinReviewRating || rating > kMaxReviewRating) {
    throw RangeError("core", "review rating " + std::to_string(rating) + " outside [1,5]");
  }
  if (rating >= 4) return Polarity::positive;
  if (rating == 3) return Polarity::neutral;
  return Polarity::negative;
}

Polarity polarity_of_user_rating(int rating) {
  if (rating < kMinUserRating || rating > kMaxUserRating) {
    throw RangeError("core", "user rating " + std::to_string(rating) + " outside [0,4]");
  }
  if (rating >= 3) return Polarity::positive;
  if (rating == 2) return Polarity::neutral;
  return Polarity::negative;
}

std::string normalize_item(std::string_view item) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  std::size_t begin = 0;
  std::size_t end = item.size();
  while (begin < end && is_space(static_cast<unsigned char>(item[begin]))) ++begin;
  while (end > begin && is_space(static_cast<unsigned char>(item[end - 1]))) --end;
  std::string out(item.substr(begin, end - begin));
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> normalize_item_set(std::span<const std::string> items) {
  std::vector<std::string> out;
  out.reserve(items.size());
  for (const auto& item : items) {
    auto norm = normalize_item(item);
    if (!norm.empty()) out.push_back(std::move(norm));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void validate_review(const Review& review) {
  if (review.rating < kMinReviewRating || review.rating > kMaxReviewRating) {
    throw RangeError("core", "review of venue '" + review.venue_id + "' has rating " +
                                 std::to_string(review.rating) + " outside [1,5]");
  }
  if (review.timestamp < 0) {
    throw RangeError("core", "review of venue '" + review.venue_id + "' has negative timestamp");
  }
  if (review.author_review_count < 0) {
    throw RangeError("core", "review of venue '" + review.venue_id +
                                 "' has negative author_review_count");
  }
}

void validate_venue(const Venue& venue) {
  if (venue.id.empty()) throw ValidationError("core", "venue with empty id");
  if (venue.keywords.size() > kMaxKeywordsPerVenue) {
    throw ValidationError("core", "venue '" + venue.id + "' has " +
                                      std::to_string(venue.keywords.size()) +
                                      " keywords (max 20)");
  }
  for (const auto& review : venue.reviews) {
    if (review.venue_id != venue.id) {
      throw ValidationError("core", "review attached to venue '" + venue.id +
                                        "' names venue '" + review.venue_id + "'");
    }
    validate_review(review);
  }
}

void validate_user(const UserHistory& user) {
  if (user.user_id.empty()) throw ValidationError("core", "user with empty id");
  for (const auto& rated : user.rated_venues) {
    if (rated.rating < kMinUserRating || rated.rating > kMaxUserRating) {
      throw RangeError("core", "user '" + user.user_id + "' rated venue '" + rated.venue_id +
                                   "' with " + std::to_string(rated.rating) + " outside [0,4]");
    }
  }
}

}  // namespace venuerec
