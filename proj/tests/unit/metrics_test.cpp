#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "venuerec/metrics.hpp"

using namespace venuerec;

namespace {

using Ids = std::vector<std::string>;

/// Ranked ids r0..r{n-1} with the given ratings as judgments.
std::pair<Ids, Judgments> ranked_with(const std::vector<int>& ratings) {
  Ids ids;
  Judgments j;
  for (std::size_t i = 0; i < ratings.size(); ++i) {
    ids.push_back("r" + std::to_string(i));
    j["r" + std::to_string(i)] = ratings[i];
  }
  return {ids, j};
}

}  // namespace

TEST(Precision, AllNoneAndMixed) {
  auto [a, ja] = ranked_with({4, 4, 3, 3, 3});
  EXPECT_DOUBLE_EQ(precision_at_5(a, ja), 1.0);
  auto [b, jb] = ranked_with({0, 1, 2, 0, 1});
  EXPECT_DOUBLE_EQ(precision_at_5(b, jb), 0.0);
  auto [c, jc] = ranked_with({4, 0, 3, 0, 0});
  EXPECT_DOUBLE_EQ(precision_at_5(c, jc), 0.4);
}

TEST(Precision, ShortListPadded) {
  auto [a, ja] = ranked_with({4, 4});
  EXPECT_DOUBLE_EQ(precision_at_5(a, ja), 0.4);
  EXPECT_DOUBLE_EQ(precision_at_5(Ids{}, ja), 0.0);
}

TEST(Ndcg, IdealIsOne) {
  auto [a, ja] = ranked_with({4, 3, 2, 1, 0, 0});
  EXPECT_DOUBLE_EQ(ndcg_at_5(a, ja), 1.0);
}

TEST(Ndcg, AllZeroPool) {
  auto [a, ja] = ranked_with({0, 0, 0});
  EXPECT_EQ(ndcg_at_5(a, ja), 0.0);
}

TEST(Ndcg, PoolFourTwoZero) {
  const Judgments j = {{"x", 2}, {"y", 4}, {"z", 0}};
  const Ids ranked = {"x", "y", "z"};
  const double dcg = (std::pow(2.0, 2) - 1.0) / 1.0 + (std::pow(2.0, 4) - 1.0) / std::log2(3.0);
  const double ideal = oracle::ideal_dcg5_exhaustive({4, 2, 0});
  EXPECT_DOUBLE_EQ(ideal, 15.0 + 3.0 / std::log2(3.0));
  EXPECT_NEAR(ndcg_at_5(ranked, j), dcg / ideal, 1e-15);
}

TEST(Ndcg, IdealUsesWholePool) {
  // The best candidate is not retrieved, so the score stays below 1.
  const Judgments j = {{"a", 1}, {"b", 4}};
  EXPECT_LT(ndcg_at_5(Ids{"a"}, j), 1.0);
  EXPECT_GT(ndcg_at_5(Ids{"a"}, j), 0.0);
}

TEST(Ndcg, UnjudgedCountsAsZero) {
  const Judgments j = {{"a", 3}};
  EXPECT_DOUBLE_EQ(ndcg_at_5(Ids{"q", "a"}, j), 1.0 / std::log2(3.0));
}

TEST(Mrr, Examples) {
  auto [a, ja] = ranked_with({3, 0});
  EXPECT_DOUBLE_EQ(reciprocal_rank(a, ja), 1.0);
  auto [b, jb] = ranked_with({0, 4});
  EXPECT_DOUBLE_EQ(reciprocal_rank(b, jb), 0.5);
  auto [c, jc] = ranked_with({0, 0, 0, 3});
  const std::vector<Ids> lists = {a, c};
  const std::vector<Judgments> judgments = {ja, jc};
  EXPECT_DOUBLE_EQ(mrr(lists, judgments), 0.625);
  auto [d, jd] = ranked_with({2, 1});
  EXPECT_EQ(reciprocal_rank(d, jd), 0.0);
}

TEST(Metrics, RelabelingInvariance) {
  const Judgments j = {{"a", 3}, {"b", 1}, {"c", 4}};
  const Judgments k = {{"zz", 3}, {"yy", 1}, {"xx", 4}};
  const Ids r1 = {"b", "a", "c"}, r2 = {"yy", "zz", "xx"};
  EXPECT_EQ(ndcg_at_5(r1, j), ndcg_at_5(r2, k));
  EXPECT_EQ(precision_at_5(r1, j), precision_at_5(r2, k));
  EXPECT_EQ(reciprocal_rank(r1, j), reciprocal_rank(r2, k));
}

TEST(Gain, Exponential) {
  EXPECT_EQ(gain(0), 0.0);
  EXPECT_EQ(gain(4), 15.0);
  const std::vector<int> pool = {0, 4, 2};
  EXPECT_DOUBLE_EQ(ideal_dcg_at(pool, 5), 15.0 + 3.0 / std::log2(3.0));
}
