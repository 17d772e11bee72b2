#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "venuerec/error.hpp"
#include "venuerec/features.hpp"
#include "venuerec/synthetic.hpp"

using namespace venuerec;

namespace {

Collection small_synthetic() {
  SyntheticSpec spec;
  spec.n_users = 5;
  spec.n_venues = 80;
  spec.seed = 3;
  return generate_synthetic(spec);
}

}  // namespace

TEST(FeatureSpec, VariantDimensions) {
  EXPECT_EQ(FeatureSpec::variant("LTR-S").features,
            (std::vector<Feature>{Feature::review, Feature::keyword}));
  EXPECT_EQ(FeatureSpec::variant("LTR-All").features.size(), 4u);
  EXPECT_EQ(FeatureSpec::variant("LTR-C").features,
            (std::vector<Feature>{Feature::cat_yelp, Feature::cat_foursquare}));
  EXPECT_EQ(FeatureSpec::variant("LTR-Y").features,
            (std::vector<Feature>{Feature::cat_yelp, Feature::review}));
  EXPECT_EQ(FeatureSpec::variant("LTR-F").features,
            (std::vector<Feature>{Feature::cat_foursquare, Feature::keyword}));
  EXPECT_EQ(FeatureSpec::variant("LinearCatRev").features.size(), 3u);
  EXPECT_THROW(FeatureSpec::variant("LTR-X"), ConfigError);
  EXPECT_EQ(variant_names().size(), 6u);
}

TEST(Assemble, OneVectorPerCandidate) {
  const Collection c = small_synthetic();
  const auto queries = assemble_features(c, FeatureSpec::variant("LTR-S"));
  ASSERT_EQ(queries.size(), c.requests.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    ASSERT_EQ(queries[i].candidates.size(), c.requests[i].candidates.size());
    for (const auto& fv : queries[i].candidates) {
      EXPECT_EQ(fv.values.size(), 2u);
      for (const double v : fv.values) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
      EXPECT_EQ(fv.label.has_value(), c.qrels.contains({fv.user_id, fv.venue_id}));
    }
  }
}

TEST(Assemble, SelectMatchesRawColumns) {
  const Collection c = small_synthetic();
  const auto raw = compute_raw_scores(c);
  const auto all = select_features(raw, FeatureSpec::variant("LTR-All"));
  const auto s = select_features(raw, FeatureSpec::variant("LTR-S"));
  for (std::size_t q = 0; q < all.size(); ++q) {
    for (std::size_t i = 0; i < all[q].candidates.size(); ++i) {
      EXPECT_EQ(s[q].candidates[i].values[0], all[q].candidates[i].values[2]);
      EXPECT_EQ(s[q].candidates[i].values[1], all[q].candidates[i].values[3]);
    }
  }
}

TEST(Assemble, MaskLeavesOtherScoresZero) {
  const Collection c = small_synthetic();
  const auto raw = compute_raw_scores(c, {}, mask_of(Feature::keyword));
  for (const auto& q : raw) {
    for (const auto& r : q.candidates) {
      EXPECT_EQ(r.values[0], 0.0);
      EXPECT_EQ(r.values[2], 0.0);
    }
  }
  auto full = compute_raw_scores(c);
  auto copy = full;
  overwrite_scores(copy, raw, mask_of(Feature::keyword));
  for (std::size_t q = 0; q < full.size(); ++q) {
    for (std::size_t i = 0; i < full[q].candidates.size(); ++i) {
      EXPECT_EQ(copy[q].candidates[i].values, full[q].candidates[i].values);
    }
  }
}

TEST(Normalize, MinMaxAndIdempotent) {
  auto q = fixture::query("u", {{2.0, 5.0}, {4.0, 5.0}, {3.0, 5.0}}, {0, 1, 2});
  normalize_per_query(q);
  EXPECT_EQ(q.candidates[0].values, (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(q.candidates[1].values, (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(q.candidates[2].values, (std::vector<double>{0.5, 0.0}));
  const auto once = q;
  normalize_per_query(q);
  for (std::size_t i = 0; i < q.candidates.size(); ++i) {
    EXPECT_EQ(q.candidates[i].values, once.candidates[i].values);
  }
}

TEST(Assemble, CandidateWithoutOverlapIsZero) {
  Collection c;
  fixture::add(c, fixture::venue("h", {"a"}));
  fixture::add(c, fixture::venue("x", {"zz"}));
  fixture::add(c, fixture::venue("y", {"yy"}));
  c.users.emplace("u", fixture::user("u", {{"h", 4}}));
  c.requests.push_back({"u", "c1", {"x", "y"}});
  const auto qs = assemble_features(c, FeatureSpec::variant("LTR-All"));
  for (const auto& fv : qs[0].candidates) {
    EXPECT_EQ(fv.values, (std::vector<double>{0.0, 0.0, 0.0, 0.0}));
  }
}

TEST(FeatureFile, LtrFormatJudgedOnly) {
  auto q = fixture::query("u1", {{0.5, 1.0}, {0.0, 0.25}}, {3, 0});
  q.candidates[1].label.reset();
  std::ostringstream out;
  write_feature_file(out, std::vector<QueryFeatures>{q});
  EXPECT_EQ(out.str(), "3 qid:u1 1:0.5 2:1 # v00\n");
}

TEST(KeywordSelection, PopularWithLargeKEqualsAll) {
  const Collection c = small_synthetic();
  FeatureOptions popular;
  popular.keyword_selection = {KeywordSelection::Mode::user_popular, 100000, 0};
  const auto a = compute_raw_scores(c, {}, mask_of(Feature::keyword));
  const auto b = compute_raw_scores(c, popular, mask_of(Feature::keyword));
  for (std::size_t q = 0; q < a.size(); ++q) {
    for (std::size_t i = 0; i < a[q].candidates.size(); ++i) {
      EXPECT_EQ(a[q].candidates[i].values, b[q].candidates[i].values);
    }
  }
}

TEST(KeywordSelection, ZeroKGivesZeroScores) {
  const Collection c = small_synthetic();
  FeatureOptions random;
  random.keyword_selection = {KeywordSelection::Mode::user_random, 0, 9};
  for (const auto& q : compute_raw_scores(c, random, mask_of(Feature::keyword))) {
    for (const auto& r : q.candidates) EXPECT_EQ(r.values[3], 0.0);
  }
}
