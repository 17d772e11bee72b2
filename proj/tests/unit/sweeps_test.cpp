#include <gtest/gtest.h>

#include <algorithm>

#include "venuerec/error.hpp"
#include "venuerec/sweeps.hpp"
#include "venuerec/synthetic.hpp"

using namespace venuerec;

namespace {

Collection sweep_collection() {
  SyntheticSpec spec;
  spec.n_users = 5;
  spec.n_venues = 60;
  spec.seed = 8;
  return generate_synthetic(spec);
}

SweepSettings fast_settings() {
  SweepSettings s;
  s.cv.kind = RankerKind::coordinate_ascent;
  s.cv.ranker.coordinate_ascent.restarts = 2;
  s.cv.seed_grid = 1;
  return s;
}

std::size_t max_reviews(const Collection& c) {
  std::size_t m = 0;
  for (const auto& [id, v] : c.venues) m = std::max(m, v.reviews.size());
  return m;
}

}  // namespace

TEST(SweepConfig, Validation) {
  SweepConfig sc;
  sc.axis = SweepAxis::keywords;
  sc.criterion = SweepCriterion::venue_random;
  sc.k_values = {0, 21};
  EXPECT_THROW(sc.validate(), ConfigError);
  sc.k_values = {5, 2};
  EXPECT_THROW(sc.validate(), ConfigError);
  sc.k_values = {0, 20};
  EXPECT_NO_THROW(sc.validate());
  sc.criterion = SweepCriterion::recent;
  EXPECT_THROW(sc.validate(), ConfigError);
}

TEST(SweepCriterion, Names) {
  for (const auto c : {SweepCriterion::random, SweepCriterion::recent, SweepCriterion::active,
                       SweepCriterion::venue_random, SweepCriterion::user_random,
                       SweepCriterion::user_popular}) {
    EXPECT_EQ(parse_sweep_criterion(to_string(c)), c);
  }
  EXPECT_THROW(parse_sweep_criterion("oldest"), ConfigError);
  EXPECT_THROW(parse_sweep_axis("photos"), ConfigError);
}

TEST(TruncateReviews, RecentKeepsNewest) {
  const Collection c = sweep_collection();
  const Collection t = truncate_reviews(c, SweepCriterion::recent, 2, 1);
  for (const auto& [id, v] : t.venues) {
    const auto& orig = c.venue(id).reviews;
    ASSERT_EQ(v.reviews.size(), std::min<std::size_t>(2, orig.size()));
    std::vector<std::int64_t> stamps;
    for (const auto& r : orig) stamps.push_back(r.timestamp);
    std::sort(stamps.rbegin(), stamps.rend());
    for (const auto& r : v.reviews) EXPECT_GE(r.timestamp, stamps[v.reviews.size() - 1]);
  }
}

TEST(TruncateReviews, ActiveKeepsMostActiveAuthors) {
  const Collection c = sweep_collection();
  const Collection t = truncate_reviews(c, SweepCriterion::active, 1, 1);
  for (const auto& [id, v] : t.venues) {
    std::int64_t best = 0;
    for (const auto& r : c.venue(id).reviews) best = std::max(best, r.author_review_count);
    ASSERT_EQ(v.reviews.size(), 1u);
    EXPECT_EQ(v.reviews[0].author_review_count, best);
  }
}

TEST(TruncateReviews, ClampsLargeK) {
  const Collection c = sweep_collection();
  EXPECT_EQ(truncate_reviews(c, SweepCriterion::random, 1000, 1), c);
}

TEST(TruncateKeywords, SubsetOfOriginal) {
  const Collection c = sweep_collection();
  const Collection t = truncate_keywords(c, 3, 4);
  for (const auto& [id, v] : t.venues) {
    const auto& orig = c.venue(id).keywords;
    EXPECT_EQ(v.keywords.size(), std::min<std::size_t>(3, orig.size()));
    for (const auto& k : v.keywords) {
      EXPECT_TRUE(std::binary_search(orig.begin(), orig.end(), k));
    }
  }
}

TEST(SweepReviews, ZeroAndClampedPoints) {
  const Collection c = sweep_collection();
  SweepConfig sc;
  sc.criterion = SweepCriterion::recent;
  sc.k_values = {0, static_cast<int>(max_reviews(c))};
  const auto curve = sweep_reviews(c, sc, fast_settings());
  ASSERT_EQ(curve.points.size(), 2u);
  EXPECT_EQ(curve.points[0].k, 0);

  const std::vector<FeatureSpec> specs = {FeatureSpec::variant("LTR-S")};
  const auto full = cross_validate(c, specs, fast_settings().cv, fast_settings().features)[0];
  EXPECT_EQ(curve.points[1].ndcg5, full.mean_ndcg5);
}

TEST(SweepReviews, RandomAveragesRepeats) {
  const Collection c = sweep_collection();
  SweepConfig sc;
  sc.criterion = SweepCriterion::random;
  sc.k_values = {2};
  sc.n_random_repeats = 3;
  const auto curve = sweep_reviews(c, sc, fast_settings());
  ASSERT_EQ(curve.points[0].repeats.size(), 3u);
  const auto& r = curve.points[0].repeats;
  EXPECT_NEAR(curve.points[0].ndcg5, (r[0] + r[1] + r[2]) / 3.0, 1e-15);
}

TEST(SweepKeywords, PopularClampEqualsUnrestricted) {
  const Collection c = sweep_collection();
  SweepConfig sc;
  sc.axis = SweepAxis::keywords;
  sc.criterion = SweepCriterion::user_popular;
  sc.k_values = {100000};
  const auto curve = sweep_keywords(c, sc, fast_settings());
  const std::vector<FeatureSpec> specs = {FeatureSpec::variant("LTR-S")};
  const auto full = cross_validate(c, specs, fast_settings().cv, fast_settings().features)[0];
  EXPECT_EQ(curve.points[0].ndcg5, full.mean_ndcg5);
}

TEST(Sweep, Deterministic) {
  const Collection c = sweep_collection();
  SweepConfig sc;
  sc.axis = SweepAxis::keywords;
  sc.criterion = SweepCriterion::user_random;
  sc.k_values = {0, 10};
  sc.n_random_repeats = 2;
  const auto a = run_sweep(c, sc, fast_settings());
  const auto b = run_sweep(c, sc, fast_settings());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_EQ(a.points[i].ndcg5, b.points[i].ndcg5);
  }
}
