#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "venuerec/error.hpp"
#include "venuerec/profile.hpp"

using namespace venuerec;

namespace {

const ItemExtractor kKeywords{ItemSource::keywords};

Collection keyword_collection() {
  Collection c;
  fixture::add(c, fixture::venue("liked", {"a", "b"}));
  fixture::add(c, fixture::venue("disliked", {"a", "c"}));
  fixture::add(c, fixture::venue("neutral", {"a"}));
  fixture::add(c, fixture::venue("cand", {"a", "b", "z"}));
  return c;
}

}  // namespace

TEST(Profile, SingleLikedVenue) {
  const Collection c = keyword_collection();
  const auto p = build_profile(fixture::user("u", {{"liked", 4}}), c, kKeywords);
  EXPECT_EQ(p.denominator, 2);
  EXPECT_TRUE(p.positive("a").same_value({1, 2}));
  EXPECT_TRUE(p.positive("b").same_value({1, 2}));
  EXPECT_TRUE(p.negative_counts.empty());
}

TEST(Profile, LikedAndDisliked) {
  const Collection c = keyword_collection();
  const auto p = build_profile(fixture::user("u", {{"liked", 3}, {"disliked", 0}}), c, kKeywords);
  EXPECT_EQ(p.denominator, 4);
  EXPECT_TRUE(p.positive("a").same_value({1, 4}));
  EXPECT_TRUE(p.negative("a").same_value({1, 4}));
  EXPECT_TRUE(p.negative("c").same_value({1, 4}));
  EXPECT_DOUBLE_EQ(frequency_score(p, std::vector<std::string>{"a"}), 0.0);
}

TEST(Profile, NeutralVenueOnlyInDenominator) {
  const Collection c = keyword_collection();
  const auto p = build_profile(fixture::user("u", {{"neutral", 2}}), c, kKeywords);
  EXPECT_EQ(p.denominator, 1);
  EXPECT_TRUE(p.positive_counts.empty());
  EXPECT_TRUE(p.negative_counts.empty());
}

TEST(Profile, EmptyHistoryIsDegenerate) {
  const Collection c = keyword_collection();
  const auto p = build_profile(fixture::user("u", {}), c, kKeywords);
  EXPECT_TRUE(p.degenerate());
  EXPECT_EQ(frequency_score(p, std::vector<std::string>{"a"}), 0.0);
}

TEST(Profile, UnknownVenueThrows) {
  const Collection c = keyword_collection();
  EXPECT_THROW(build_profile(fixture::user("u", {{"nope", 4}}), c, kKeywords), ValidationError);
}

TEST(Profile, ItemsCountOncePerVenueAfterFolding) {
  Collection c;
  fixture::add(c, fixture::venue("v", {"Pasta", "pasta ", "wine"}));
  const auto p = build_profile(fixture::user("u", {{"v", 4}}), c, kKeywords);
  EXPECT_EQ(p.denominator, 2);
  EXPECT_TRUE(p.positive("pasta").same_value({1, 2}));
}

TEST(Score, HandCount) {
  const Collection c = keyword_collection();
  const auto p = build_profile(fixture::user("u", {{"liked", 4}}), c, kKeywords);
  EXPECT_DOUBLE_EQ(frequency_score(p, std::vector<std::string>{"a"}), 0.5);
  EXPECT_DOUBLE_EQ(frequency_score(p, std::vector<std::string>{"q"}), 0.0);
}

TEST(Score, AdditiveOverDisjointItems) {
  const Collection c = keyword_collection();
  const auto p = build_profile(fixture::user("u", {{"liked", 4}, {"disliked", 1}}), c, kKeywords);
  const std::vector<std::string> ab = {"a", "b"}, a = {"a"}, b = {"b"};
  EXPECT_DOUBLE_EQ(frequency_score(p, ab), frequency_score(p, a) + frequency_score(p, b));
}

TEST(Score, ScoreAllMatchesSingleCalls) {
  Collection c = keyword_collection();
  fixture::add(c, fixture::venue("cand2", {"c"}));
  fixture::add(c, fixture::venue("cand3", {}));
  const auto user = fixture::user("u", {{"liked", 4}, {"disliked", 1}, {"neutral", 2}});
  const RankingRequest request{"u", "c1", {"cand", "cand2", "cand3"}};
  const auto scores = score_all(user, request, c, kKeywords);
  ASSERT_EQ(scores.size(), 3u);
  const auto p = build_profile(user, c, kKeywords);
  for (const auto& id : request.candidates) {
    EXPECT_EQ(scores.at(id), frequency_score(p, kKeywords.items(c.venue(id))));
  }
  // Oracle: cand {a,b,z} -> (1 - 1) + 1 over denominator 5.
  const auto counts = oracle::recount(user, c, &Venue::keywords);
  EXPECT_EQ(counts.denominator, 5);
  EXPECT_EQ(oracle::score_numerator(counts, c.venue("cand").keywords), 1);
  EXPECT_DOUBLE_EQ(scores.at("cand"), 1.0 / 5.0);
}

TEST(Restrict, KeepsDenominator) {
  const Collection c = keyword_collection();
  const auto p = build_profile(fixture::user("u", {{"liked", 4}, {"disliked", 1}}), c, kKeywords);
  const auto r = restrict_profile(p, std::vector<std::string>{"b"});
  EXPECT_EQ(r.denominator, p.denominator);
  EXPECT_EQ(r.items(), std::vector<std::string>{"b"});
}

TEST(Restrict, MostFrequentBreaksTiesLexicographically) {
  const Collection c = keyword_collection();
  const auto p = build_profile(fixture::user("u", {{"liked", 4}, {"disliked", 1}}), c, kKeywords);
  // a: 2 occurrences, b and c: 1 each.
  EXPECT_EQ(most_frequent_items(p, 2), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(most_frequent_items(p, 10).size(), 3u);
}

TEST(Restrict, RandomItemsAreDistinctMembers) {
  const Collection c = keyword_collection();
  const auto p = build_profile(fixture::user("u", {{"liked", 4}, {"disliked", 1}}), c, kKeywords);
  Rng rng(5);
  auto picked = random_items(p, 2, rng);
  ASSERT_EQ(picked.size(), 2u);
  std::sort(picked.begin(), picked.end());
  EXPECT_NE(picked[0], picked[1]);
  for (const auto& item : picked) EXPECT_TRUE(item == "a" || item == "b" || item == "c");
  EXPECT_EQ(random_items(p, 9, rng).size(), 3u);
}
