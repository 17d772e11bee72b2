#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "venuerec/collection.hpp"
#include "venuerec/features.hpp"

namespace venuerec {

enum class RankerKind { pairwise_neural, coordinate_ascent, adarank, linear_interpolation };

std::string_view to_string(RankerKind kind) noexcept;
/// Accepts the to_string names; throws ConfigError otherwise.
RankerKind parse_ranker_kind(std::string_view name);

struct CoordinateAscentOptions {
  int grid_points = 51;
  int restarts = 25;
  int max_cycles = 20;
  std::uint64_t seed = 1;
};

struct PairwiseNeuralOptions {
  int hidden_units = 10;
  double learning_rate = 1e-3;
  int epochs = 100;
  double init_range = 0.1;
  std::uint64_t seed = 1;
};

struct AdaRankOptions {
  int max_rounds = 50;
};

struct LinearInterpolationOptions {
  double step = 0.1;
};

struct RankerOptions {
  CoordinateAscentOptions coordinate_ascent;
  PairwiseNeuralOptions pairwise_neural;
  AdaRankOptions adarank;
  LinearInterpolationOptions linear_interpolation;

  /// Copies `seed` into every seeded trainer.
  void set_seed(std::uint64_t seed) {
    coordinate_ascent.seed = seed;
    pairwise_neural.seed = seed;
  }
};

/// Immutable trained model; scoring is a pure function of the parameters.
///
/// Linear kinds store one weight per feature. The pairwise neural kind stores
/// hidden weights (row-major hidden x features), hidden biases, then output
/// weights.
struct TrainedRanker {
  RankerKind kind = RankerKind::coordinate_ascent;
  std::size_t n_features = 0;
  std::size_t hidden_units = 0;
  std::vector<double> parameters;

  double score(std::span<const double> x) const;

  bool operator==(const TrainedRanker&) const = default;
};

/// Cyclic coordinate line search on mean nDCG@5 with seeded restarts.
TrainedRanker train_coordinate_ascent(std::span<const QueryFeatures> train,
                                      const CoordinateAscentOptions& options = {});

/// One hidden layer of logistic units trained on the pairwise logistic loss.
TrainedRanker train_pairwise_neural(std::span<const QueryFeatures> train,
                                    const PairwiseNeuralOptions& options = {});

struct AdaRankTrace {
  /// (feature index, alpha) per accepted round.
  std::vector<std::pair<std::size_t, double>> rounds;
};

/// Boosting over single-feature weak rankers, scored by nDCG@5.
TrainedRanker train_adarank(std::span<const QueryFeatures> train,
                            const AdaRankOptions& options = {}, AdaRankTrace* trace = nullptr);

/// Convex weights over all supplied features, grid searched on the simplex.
/// `evaluated` receives the number of weightings tried.
TrainedRanker train_linear_interpolation(std::span<const QueryFeatures> train,
                                         const LinearInterpolationOptions& options = {},
                                         std::size_t* evaluated = nullptr);

TrainedRanker train_ranker(RankerKind kind, std::span<const QueryFeatures> train,
                           const RankerOptions& options = {});

/// Descending score, ties by ascending venue id, at most 30 entries.
std::vector<ScoredVenue> rank(const TrainedRanker& ranker, const QueryFeatures& query);

RankedList rank_query(const TrainedRanker& ranker, const QueryFeatures& query);

/// Mean nDCG@5 over queries with judged candidates, using only judged
/// candidates (the training objective of the trainers above).
double mean_training_ndcg(const TrainedRanker& ranker, std::span<const QueryFeatures> queries);

/// Pieces of the pairwise neural ranker, exposed for gradient checks.
namespace neural {

std::size_t parameter_count(std::size_t features, std::size_t hidden);

double output(std::span<const double> params, std::size_t features, std::size_t hidden,
              std::span<const double> x);

/// ln(1 + exp(−(s(better) − s(worse))))
double pair_loss(std::span<const double> params, std::size_t features, std::size_t hidden,
                 std::span<const double> better, std::span<const double> worse);

/// Adds ∂pair_loss/∂params into `gradient`.
void add_pair_gradient(std::span<const double> params, std::size_t features, std::size_t hidden,
                       std::span<const double> better, std::span<const double> worse,
                       std::span<double> gradient);

/// Sum of pair losses over preference pairs (better index, worse index) of one query.
double query_loss(std::span<const double> params, std::size_t features, std::size_t hidden,
                  std::span<const std::vector<double>> docs,
                  std::span<const std::pair<std::size_t, std::size_t>> pairs);

/// Adds ∂query_loss/∂params into `gradient`, one forward pass per document.
void add_query_gradient(std::span<const double> params, std::size_t features, std::size_t hidden,
                        std::span<const std::vector<double>> docs,
                        std::span<const std::pair<std::size_t, std::size_t>> pairs,
                        std::span<double> gradient);

}  // namespace neural

}  // namespace venuerec
