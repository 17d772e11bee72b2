#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "venuerec/collection.hpp"
#include "venuerec/cross_validation.hpp"

namespace venuerec {

enum class SweepAxis { reviews, keywords };

enum class SweepCriterion {
  random,         // k random reviews per venue
  recent,         // k most recent reviews per venue
  active,         // k reviews by the most active authors per venue
  venue_random,   // k random keywords per venue
  user_random,    // k random entries of the user's keyword profile
  user_popular,   // k most frequent entries of the user's keyword profile
};

std::string_view to_string(SweepAxis axis) noexcept;
std::string_view to_string(SweepCriterion criterion) noexcept;
SweepAxis parse_sweep_axis(std::string_view name);
SweepCriterion parse_sweep_criterion(std::string_view name);
SweepAxis axis_of(SweepCriterion criterion) noexcept;
bool is_randomized(SweepCriterion criterion) noexcept;

struct SweepConfig {
  SweepAxis axis = SweepAxis::reviews;
  SweepCriterion criterion = SweepCriterion::recent;
  std::vector<int> k_values;
  int n_random_repeats = 5;
  std::uint64_t seed = 1;

  /// Throws ConfigError: criterion off the axis, k values negative or not
  /// ascending, k > 20 for venue-random.
  void validate() const;
};

struct SweepPoint {
  int k = 0;
  double ndcg5 = 0.0;
  /// One value per repeat for randomized criteria, otherwise a single value.
  std::vector<double> repeats;
};

struct SweepCurve {
  SweepCriterion criterion = SweepCriterion::recent;
  std::vector<SweepPoint> points;
};

/// What is evaluated at every sweep point: the LTR-S variant cross-validated
/// with these options.
struct SweepSettings {
  CrossValidationOptions cv;
  FeatureOptions features;
};

/// Keeps at most k reviews per venue according to a review-axis criterion.
/// Kept reviews retain their original order.
Collection truncate_reviews(const Collection& collection, SweepCriterion criterion, int k,
                            std::uint64_t seed);

/// Keeps at most k seeded-random keywords per venue.
Collection truncate_keywords(const Collection& collection, int k, std::uint64_t seed);

SweepCurve sweep_reviews(const Collection& collection, const SweepConfig& config,
                         const SweepSettings& settings);

SweepCurve sweep_keywords(const Collection& collection, const SweepConfig& config,
                          const SweepSettings& settings);

/// Dispatches on config.axis.
SweepCurve run_sweep(const Collection& collection, const SweepConfig& config,
                     const SweepSettings& settings);

}  // namespace venuerec
