#include <gtest/gtest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "venuerec/cross_validation.hpp"
#include "venuerec/error.hpp"
#include "venuerec/metrics.hpp"
#include "venuerec/synthetic.hpp"

using namespace venuerec;

namespace {

Collection cv_collection() {
  SyntheticSpec spec;
  spec.n_users = 10;
  spec.n_venues = 120;
  spec.seed = 5;
  return generate_synthetic(spec);
}

CrossValidationOptions fast_options() {
  CrossValidationOptions o;
  o.kind = RankerKind::coordinate_ascent;
  o.ranker.coordinate_ascent.restarts = 3;
  o.seed_grid = 1;
  return o;
}

}  // namespace

TEST(Folds, TenUsersFoldsOfTwo) {
  std::vector<std::string> ids;
  for (int i = 0; i < 10; ++i) ids.push_back("u" + std::to_string(i));
  const auto folds = assign_folds(ids, 5, 42);
  ASSERT_EQ(folds.size(), 10u);
  std::map<int, int> sizes;
  for (const int f : folds) ++sizes[f];
  ASSERT_EQ(sizes.size(), 5u);
  for (const auto& [f, n] : sizes) EXPECT_EQ(n, 2);
}

TEST(Folds, IndependentOfInputOrder) {
  std::vector<std::string> ids = {"c", "a", "e", "b", "d", "f"};
  const auto a = assign_folds(ids, 3, 1);
  std::map<std::string, int> by_id;
  for (std::size_t i = 0; i < ids.size(); ++i) by_id[ids[i]] = a[i];
  std::reverse(ids.begin(), ids.end());
  const auto b = assign_folds(ids, 3, 1);
  for (std::size_t i = 0; i < ids.size(); ++i) EXPECT_EQ(b[i], by_id[ids[i]]);
}

TEST(Folds, TooFewUsers) {
  const std::vector<std::string> ids = {"a", "b", "c", "d"};
  EXPECT_THROW(assign_folds(ids, 5, 1), ConfigError);
}

TEST(CrossValidate, EveryUserHeldOutOnce) {
  const Collection c = cv_collection();
  const std::vector<FeatureSpec> specs = {FeatureSpec::variant("LTR-S")};
  const auto reports = cross_validate(c, specs, fast_options());
  ASSERT_EQ(reports.size(), 1u);
  const auto& r = reports[0];
  ASSERT_EQ(r.users.size(), 10u);
  std::set<std::string> seen;
  std::map<int, int> per_fold;
  for (const auto& u : r.users) {
    EXPECT_TRUE(seen.insert(u.user_id).second);
    ++per_fold[u.fold];
  }
  EXPECT_EQ(per_fold.size(), 5u);
}

TEST(CrossValidate, PooledMeanMatchesRecomputation) {
  const Collection c = cv_collection();
  const std::vector<FeatureSpec> specs = {FeatureSpec::variant("LTR-All")};
  const auto r = cross_validate(c, specs, fast_options())[0];
  double ndcg = 0.0, p5 = 0.0, rr = 0.0;
  for (const auto& run : r.runs) {
    std::vector<std::string> ids;
    for (const auto& e : run.entries) ids.push_back(e.venue_id);
    const auto j = c.judgments_for(run.user_id);
    ndcg += oracle::ndcg_at_5(ids, j);
    p5 += oracle::precision_at_5(ids, j);
    rr += oracle::reciprocal_rank(ids, j);
  }
  const double n = static_cast<double>(r.runs.size());
  EXPECT_NEAR(r.mean_ndcg5, ndcg / n, 1e-12);
  EXPECT_NEAR(r.mean_precision5, p5 / n, 1e-12);
  EXPECT_NEAR(r.mean_mrr, rr / n, 1e-12);
}

TEST(CrossValidate, Deterministic) {
  const Collection c = cv_collection();
  const std::vector<FeatureSpec> specs = {FeatureSpec::variant("LTR-S")};
  const auto a = cross_validate(c, specs, fast_options())[0];
  const auto b = cross_validate(c, specs, fast_options())[0];
  EXPECT_EQ(a.runs, b.runs);
  EXPECT_EQ(a.mean_ndcg5, b.mean_ndcg5);
}

TEST(Evaluate, MissingRunScoresZero) {
  std::map<std::string, Judgments, std::less<>> j;
  j["u1"] = {{"a", 4}};
  j["u2"] = {{"b", 4}};
  const std::vector<RankedList> runs = {{"u1", {{"a", 1.0}}}};
  const auto r = evaluate_runs(runs, j, "ext");
  ASSERT_EQ(r.users.size(), 2u);
  EXPECT_DOUBLE_EQ(r.mean_ndcg5, 0.5);
  EXPECT_DOUBLE_EQ(r.mean_mrr, 0.5);
  EXPECT_DOUBLE_EQ(r.per_user(Metric::precision5)[1], 0.0);
}

TEST(RandomBaseline, WithinBoundsAndDeterministic) {
  const Collection c = cv_collection();
  const auto a = random_baseline(c, 100, 3);
  const auto b = random_baseline(c, 100, 3);
  EXPECT_EQ(a.mean_ndcg5, b.mean_ndcg5);
  EXPECT_GT(a.mean_ndcg5, 0.0);
  EXPECT_LT(a.mean_ndcg5, 1.0);
  EXPECT_EQ(a.users.size(), c.requests.size());
}
