#include "venuerec/sweeps.hpp"

#include <algorithm>

#include "venuerec/error.hpp"
#include "venuerec/parallel.hpp"
#include "venuerec/random.hpp"

namespace venuerec {

namespace {

constexpr const char* kModule = "eval";

struct CriterionName {
  SweepCriterion criterion;
  std::string_view name;
};

constexpr CriterionName kCriteria[] = {
    {SweepCriterion::random, "random"},
    {SweepCriterion::recent, "recent"},
    {SweepCriterion::active, "active"},
    {SweepCriterion::venue_random, "venue-random"},
    {SweepCriterion::user_random, "user-random"},
    {SweepCriterion::user_popular, "user-popular"},
};

double ltr_s_ndcg(const Collection& collection, std::span<const RawQuery> raw,
                  const SweepSettings& settings) {
  const FeatureSpec spec = FeatureSpec::variant("LTR-S");
  const auto queries = select_features(raw, spec);
  return cross_validate_queries(queries, collection, spec.name, settings.cv).mean_ndcg5;
}

std::uint64_t point_seed(const SweepConfig& config, int k, int repeat) {
  return derive_seed(config.seed, std::string(to_string(config.criterion)) + "/k" +
                                      std::to_string(k) + "/r" + std::to_string(repeat));
}

/// Evaluates every (k, repeat) job and folds repeats into points.
template <typename Job>
SweepCurve evaluate_points(const SweepConfig& config, Job&& job) {
  const int repeats = is_randomized(config.criterion) ? std::max(1, config.n_random_repeats) : 1;
  const std::size_t n = config.k_values.size() * static_cast<std::size_t>(repeats);
  std::vector<double> values(n);
  parallel_for(n, [&](std::size_t i) {
    const int k = config.k_values[i / repeats];
    const int r = static_cast<int>(i % repeats);
    values[i] = job(k, point_seed(config, k, r));
  });
  SweepCurve curve{config.criterion, {}};
  for (std::size_t p = 0; p < config.k_values.size(); ++p) {
    SweepPoint point{config.k_values[p], 0.0, {}};
    for (int r = 0; r < repeats; ++r) point.repeats.push_back(values[p * repeats + r]);
    // Offset from the first repeat so identical repeats average exactly.
    double offset = 0.0;
    for (const double v : point.repeats) offset += v - point.repeats.front();
    point.ndcg5 = point.repeats.front() + offset / repeats;
    curve.points.push_back(std::move(point));
  }
  return curve;
}

}  // namespace

std::string_view to_string(SweepAxis axis) noexcept {
  return axis == SweepAxis::reviews ? "reviews" : "keywords";
}

std::string_view to_string(SweepCriterion criterion) noexcept {
  for (const auto& c : kCriteria) {
    if (c.criterion == criterion) return c.name;
  }
  return "unknown";
}

SweepAxis parse_sweep_axis(std::string_view name) {
  if (name == "reviews") return SweepAxis::reviews;
  if (name == "keywords") return SweepAxis::keywords;
  throw ConfigError(kModule, "unknown sweep axis '" + std::string(name) + "'");
}

SweepCriterion parse_sweep_criterion(std::string_view name) {
  for (const auto& c : kCriteria) {
    if (c.name == name) return c.criterion;
  }
  throw ConfigError(kModule, "unknown sweep criterion '" + std::string(name) + "'");
}

SweepAxis axis_of(SweepCriterion criterion) noexcept {
  switch (criterion) {
    case SweepCriterion::random:
    case SweepCriterion::recent:
    case SweepCriterion::active: return SweepAxis::reviews;
    default: return SweepAxis::keywords;
  }
}

bool is_randomized(SweepCriterion criterion) noexcept {
  return criterion == SweepCriterion::random || criterion == SweepCriterion::venue_random ||
         criterion == SweepCriterion::user_random;
}

void SweepConfig::validate() const {
  if (axis_of(criterion) != axis) {
    throw ConfigError(kModule, "criterion '" + std::string(to_string(criterion)) +
                                   "' does not belong to the " + std::string(to_string(axis)) +
                                   " axis");
  }
  if (k_values.empty()) throw ConfigError(kModule, "sweep needs at least one k value");
  for (std::size_t i = 0; i < k_values.size(); ++i) {
    if (k_values[i] < 0) throw ConfigError(kModule, "sweep k values must be non-negative");
    if (i > 0 && k_values[i] <= k_values[i - 1]) {
      throw ConfigError(kModule, "sweep k values must be strictly ascending");
    }
  }
  if (criterion == SweepCriterion::venue_random &&
      k_values.back() > static_cast<int>(kMaxKeywordsPerVenue)) {
    throw ConfigError(kModule, "venue-random sweeps are limited to k <= 20");
  }
  if (n_random_repeats < 1) throw ConfigError(kModule, "sweep repeats must be >= 1");
}

Collection truncate_reviews(const Collection& collection, SweepCriterion criterion, int k,
                            std::uint64_t seed) {
  if (axis_of(criterion) != SweepAxis::reviews) {
    throw ConfigError(kModule, "not a review-axis criterion");
  }
  const auto keep = static_cast<std::size_t>(std::max(0, k));
  Collection out = collection;
  for (auto& [id, venue] : out.venues) {
    auto& reviews = venue.reviews;
    if (reviews.size() <= keep) continue;
    std::vector<std::size_t> order(reviews.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    switch (criterion) {
      case SweepCriterion::random: {
        Rng rng(derive_seed(seed, id));
        rng.shuffle(std::span<std::size_t>(order));
        break;
      }
      case SweepCriterion::recent:
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
          return reviews[a].timestamp > reviews[b].timestamp;
        });
        break;
      case SweepCriterion::active:
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
          if (reviews[a].author_review_count != reviews[b].author_review_count) {
            return reviews[a].author_review_count > reviews[b].author_review_count;
          }
          return reviews[a].timestamp > reviews[b].timestamp;
        });
        break;
      default: break;
    }
    order.resize(keep);
    std::sort(order.begin(), order.end());
    std::vector<Review> kept;
    kept.reserve(keep);
    for (const std::size_t i : order) kept.push_back(std::move(reviews[i]));
    reviews = std::move(kept);
  }
  return out;
}

Collection truncate_keywords(const Collection& collection, int k, std::uint64_t seed) {
  const auto keep = static_cast<std::size_t>(std::max(0, k));
  Collection out = collection;
  for (auto& [id, venue] : out.venues) {
    if (venue.keywords.size() <= keep) continue;
    Rng rng(derive_seed(seed, id));
    rng.shuffle(std::span<std::string>(venue.keywords));
    venue.keywords.resize(keep);
    std::sort(venue.keywords.begin(), venue.keywords.end());
  }
  return out;
}

SweepCurve sweep_reviews(const Collection& collection, const SweepConfig& config,
                         const SweepSettings& settings) {
  config.validate();
  if (config.axis != SweepAxis::reviews) throw ConfigError(kModule, "not a review sweep");
  const auto base = compute_raw_scores(collection, settings.features, mask_of(Feature::keyword));
  return evaluate_points(config, [&](int k, std::uint64_t seed) {
    const Collection pruned = truncate_reviews(collection, config.criterion, k, seed);
    auto raw = base;
    overwrite_scores(raw, compute_raw_scores(pruned, settings.features, mask_of(Feature::review)),
                     mask_of(Feature::review));
    return ltr_s_ndcg(collection, raw, settings);
  });
}

SweepCurve sweep_keywords(const Collection& collection, const SweepConfig& config,
                          const SweepSettings& settings) {
  config.validate();
  if (config.axis != SweepAxis::keywords) throw ConfigError(kModule, "not a keyword sweep");
  const auto base = compute_raw_scores(collection, settings.features, mask_of(Feature::review));
  return evaluate_points(config, [&](int k, std::uint64_t seed) {
    auto raw = base;
    FeatureOptions options = settings.features;
    std::vector<RawQuery> keyword;
    switch (config.criterion) {
      case SweepCriterion::venue_random:
        keyword = compute_raw_scores(truncate_keywords(collection, k, seed), options,
                                     mask_of(Feature::keyword));
        break;
      case SweepCriterion::user_random:
        options.keyword_selection = {KeywordSelection::Mode::user_random,
                                     static_cast<std::size_t>(k), seed};
        keyword = compute_raw_scores(collection, options, mask_of(Feature::keyword));
        break;
      default:
        options.keyword_selection = {KeywordSelection::Mode::user_popular,
                                     static_cast<std::size_t>(k), seed};
        keyword = compute_raw_scores(collection, options, mask_of(Feature::keyword));
        break;
    }
    overwrite_scores(raw, keyword, mask_of(Feature::keyword));
    return ltr_s_ndcg(collection, raw, settings);
  });
}

SweepCurve run_sweep(const Collection& collection, const SweepConfig& config,
                     const SweepSettings& settings) {
  return config.axis == SweepAxis::reviews ? sweep_reviews(collection, config, settings)
                                           : sweep_keywords(collection, config, settings);
}

}  // namespace venuerec
