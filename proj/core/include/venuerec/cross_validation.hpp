#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "venuerec/collection.hpp"
#include "venuerec/features.hpp"
#include "venuerec/rankers.hpp"

namespace venuerec {

enum class Metric { precision5, ndcg5, mrr };

std::string_view to_string(Metric m) noexcept;

struct UserMetrics {
  std::string user_id;
  int fold = -1;
  double precision5 = 0.0;
  double ndcg5 = 0.0;
  double reciprocal_rank = 0.0;

  double get(Metric m) const;
};

/// Per-user metric values (sorted by user id) and their arithmetic means.
struct MetricReport {
  std::string model;
  std::vector<UserMetrics> users;
  double mean_precision5 = 0.0;
  double mean_ndcg5 = 0.0;
  double mean_mrr = 0.0;
  /// Held-out ranked lists, in user order.
  std::vector<RankedList> runs;

  double mean(Metric m) const;
  std::vector<double> per_user(Metric m) const;
  /// Means over the users of one fold.
  double fold_mean(int fold, Metric m) const;
  void recompute_means();
};

/// Scores ranked lists against a user -> judgments table. Users absent from
/// `runs` get an empty list (all metrics 0).
MetricReport evaluate_runs(std::span<const RankedList> runs,
                           const std::map<std::string, Judgments, std::less<>>& judgments,
                           std::string model);

/// Judgments grouped by user.
std::map<std::string, Judgments, std::less<>> judgments_by_user(const Collection& collection);

struct CrossValidationOptions {
  int folds = 5;
  std::uint64_t seed = 1;
  RankerKind kind = RankerKind::pairwise_neural;
  RankerOptions ranker;
  /// Number of trainer seeds tried per fold; the one with the best training
  /// nDCG@5 is kept.
  int seed_grid = 3;
};

/// Fold index per user (same order as `user_ids`): ids are sorted, shuffled
/// with the seed, and dealt round-robin. Throws ConfigError with fewer users
/// than folds.
std::vector<int> assign_folds(std::span<const std::string> user_ids, int folds,
                              std::uint64_t seed);

/// Cross-validated held-out metrics for one set of assembled queries.
MetricReport cross_validate_queries(std::span<const QueryFeatures> queries,
                                    const Collection& collection, std::string model,
                                    const CrossValidationOptions& options);

/// One report per feature spec. The LinearCatRev spec always uses the
/// linear-interpolation trainer.
std::vector<MetricReport> cross_validate(const Collection& collection,
                                         std::span<const FeatureSpec> specs,
                                         const CrossValidationOptions& options,
                                         const FeatureOptions& feature_options = {});

/// Same as above on precomputed raw scores.
std::vector<MetricReport> cross_validate(const Collection& collection,
                                         std::span<const RawQuery> raw,
                                         std::span<const FeatureSpec> specs,
                                         const CrossValidationOptions& options);

/// Per-user metrics averaged over `permutations` seeded random orderings of
/// each user's candidates.
MetricReport random_baseline(const Collection& collection, int permutations, std::uint64_t seed);

}  // namespace venuerec
