#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "venuerec/error.hpp"
#include "venuerec/types.hpp"

using namespace venuerec;

TEST(Polarity, ReviewStars) {
  EXPECT_EQ(polarity_of_review_rating(5), Polarity::positive);
  EXPECT_EQ(polarity_of_review_rating(4), Polarity::positive);
  EXPECT_EQ(polarity_of_review_rating(3), Polarity::neutral);
  EXPECT_EQ(polarity_of_review_rating(2), Polarity::negative);
  EXPECT_EQ(polarity_of_review_rating(1), Polarity::negative);
  EXPECT_THROW(polarity_of_review_rating(0), RangeError);
  EXPECT_THROW(polarity_of_review_rating(6), RangeError);
}

TEST(Polarity, UserRatings) {
  EXPECT_EQ(polarity_of_user_rating(4), Polarity::positive);
  EXPECT_EQ(polarity_of_user_rating(3), Polarity::positive);
  EXPECT_EQ(polarity_of_user_rating(2), Polarity::neutral);
  EXPECT_EQ(polarity_of_user_rating(1), Polarity::negative);
  EXPECT_EQ(polarity_of_user_rating(0), Polarity::negative);
  EXPECT_THROW(polarity_of_user_rating(-1), RangeError);
  EXPECT_THROW(polarity_of_user_rating(5), RangeError);
}

TEST(Items, NormalizeFoldsCaseAndTrims) {
  EXPECT_EQ(normalize_item("  Pasta "), "pasta");
  const std::vector<std::string> raw = {"Cozy", "pasta", " cozy", "", "  "};
  EXPECT_EQ(normalize_item_set(raw), (std::vector<std::string>{"cozy", "pasta"}));
}

TEST(Validation, VenueKeywordLimit) {
  std::vector<std::string> kws;
  for (int i = 0; i < 21; ++i) kws.push_back("k" + std::to_string(i));
  EXPECT_THROW(validate_venue(fixture::venue("v1", kws)), ValidationError);
  kws.pop_back();
  EXPECT_NO_THROW(validate_venue(fixture::venue("v1", kws)));
}

TEST(Validation, ReviewBelongsToVenue) {
  auto v = fixture::venue("v1");
  v.reviews.push_back(fixture::review("v2", "ok", 4));
  EXPECT_THROW(validate_venue(v), ValidationError);
}

TEST(Validation, ReviewRatingScale) {
  EXPECT_THROW(validate_review(fixture::review("v1", "x", 0)), RangeError);
  EXPECT_NO_THROW(validate_review(fixture::review("v1", "x", 5)));
}

TEST(Validation, UserRatingScale) {
  EXPECT_NO_THROW(validate_user(fixture::user("u", {{"v1", 0}, {"v2", 4}})));
  EXPECT_THROW(validate_user(fixture::user("u", {{"v1", 7}})), RangeError);
}
