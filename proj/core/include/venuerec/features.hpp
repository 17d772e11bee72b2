#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "venuerec/classifier.hpp"
#include "venuerec/collection.hpp"

namespace venuerec {

enum class Feature { cat_yelp = 0, cat_foursquare = 1, review = 2, keyword = 3 };
inline constexpr std::size_t kFeatureCount = 4;

std::string_view to_string(Feature f) noexcept;

/// A named subset of the four relevance scores.
struct FeatureSpec {
  std::string name;
  std::vector<Feature> features;

  /// LTR-All, LTR-S, LTR-C, LTR-Y, LTR-F, or LinearCatRev (the category and
  /// review scores combined by the interpolation baseline). Throws
  /// ConfigError for other names.
  static FeatureSpec variant(std::string_view name);

  bool operator==(const FeatureSpec&) const = default;
};

/// Variant names accepted by FeatureSpec::variant.
std::span<const std::string_view> variant_names();

struct FeatureVector {
  std::string user_id;
  std::string venue_id;
  std::vector<double> values;
  std::optional<int> label;
};

/// Every candidate of one ranking request.
struct QueryFeatures {
  std::string user_id;
  std::vector<FeatureVector> candidates;
};

/// How the keyword score sees the user's keyword profile.
struct KeywordSelection {
  enum class Mode { all, user_random, user_popular };
  Mode mode = Mode::all;
  std::size_t k = 0;
  std::uint64_t seed = 0;
};

struct FeatureOptions {
  SolverOptions solver;
  KeywordSelection keyword_selection;
};

/// Raw (unnormalized) scores for one (user, candidate), indexed by Feature.
struct RawScores {
  std::string venue_id;
  std::array<double, kFeatureCount> values{};
  std::optional<int> label;
  bool review_no_evidence = false;
};

struct RawQuery {
  std::string user_id;
  std::vector<RawScores> candidates;
};

/// Bitmask over Feature to limit which scores get computed.
using FeatureMask = unsigned;
inline constexpr FeatureMask kAllFeatures = 0xF;
constexpr FeatureMask mask_of(Feature f) { return 1u << static_cast<unsigned>(f); }

/// All four raw scores for every request, in request order. Scores outside
/// `mask` are left at 0.
std::vector<RawQuery> compute_raw_scores(const Collection& collection,
                                         const FeatureOptions& options = {},
                                         FeatureMask mask = kAllFeatures);

/// Replaces the scores selected by `mask` in `target` with those of `source`.
void overwrite_scores(std::vector<RawQuery>& target, const std::vector<RawQuery>& source,
                      FeatureMask mask);

/// Selects the spec's features and min-max normalizes each one per query
/// (a constant feature maps to 0).
std::vector<QueryFeatures> select_features(std::span<const RawQuery> raw, const FeatureSpec& spec);

/// compute_raw_scores followed by select_features.
std::vector<QueryFeatures> assemble_features(const Collection& collection,
                                             const FeatureSpec& spec,
                                             const FeatureOptions& options = {});

/// In-place per-query min-max normalization; idempotent.
void normalize_per_query(QueryFeatures& query);

/// Learning-to-rank text lines "label qid:<user> 1:<v> ... # venue_id". Only
/// judged vectors are written.
void write_feature_file(std::ostream& out, std::span<const QueryFeatures> queries,
                        std::string_view header = {});

}  // namespace venuerec
