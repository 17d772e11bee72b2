#include "venuerec/features.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "venuerec/error.hpp"
#include "venuerec/profile.hpp"
#include "venuerec/random.hpp"
#include "venuerec/review_model.hpp"

namespace venuerec {

namespace {

constexpr const char* kModule = "rank-fusion";

constexpr std::string_view kVariantNames[] = {"LTR-All", "LTR-S", "LTR-C",
                                              "LTR-Y",   "LTR-F", "LinearCatRev"};

FrequencyProfile keyword_profile_for_scoring(const FrequencyProfile& full,
                                             const KeywordSelection& selection,
                                             std::string_view user_id) {
  switch (selection.mode) {
    case KeywordSelection::Mode::all:
      return full;
    case KeywordSelection::Mode::user_popular:
      return restrict_profile(full, most_frequent_items(full, selection.k));
    case KeywordSelection::Mode::user_random: {
      Rng rng(derive_seed(selection.seed, user_id));
      return restrict_profile(full, random_items(full, selection.k, rng));
    }
  }
  return full;
}

}  // namespace

std::string_view to_string(Feature f) noexcept {
  switch (f) {
    case Feature::cat_yelp: return "S_cat_yelp";
    case Feature::cat_foursquare: return "S_cat_foursquare";
    case Feature::review: return "S_rev";
    case Feature::keyword: return "S_key";
  }
  return "unknown";
}

std::span<const std::string_view> variant_names() { return kVariantNames; }

FeatureSpec FeatureSpec::variant(std::string_view name) {
  using F = Feature;
  if (name == "LTR-All") return {"LTR-All", {F::cat_yelp, F::cat_foursquare, F::review, F::keyword}};
  if (name == "LTR-S") return {"LTR-S", {F::review, F::keyword}};
  if (name == "LTR-C") return {"LTR-C", {F::cat_yelp, F::cat_foursquare}};
  if (name == "LTR-Y") return {"LTR-Y", {F::cat_yelp, F::review}};
  if (name == "LTR-F") return {"LTR-F", {F::cat_foursquare, F::keyword}};
  if (name == "LinearCatRev") return {"LinearCatRev", {F::cat_yelp, F::cat_foursquare, F::review}};
  throw ConfigError(kModule, "unknown model variant '" + std::string(name) + "'");
}

std::vector<RawQuery> compute_raw_scores(const Collection& collection,
                                         const FeatureOptions& options, FeatureMask mask) {
  const ItemExtractor yelp{ItemSource::categories_yelp};
  const ItemExtractor foursquare{ItemSource::categories_foursquare};
  const ItemExtractor keywords{ItemSource::keywords};

  std::vector<RawQuery> out;
  out.reserve(collection.requests.size());
  for (const auto& request : collection.requests) {
    const UserHistory& user = collection.user(request.user_id);
    const Judgments judgments = collection.judgments_for(request.user_id);

    FrequencyProfile yelp_profile, foursquare_profile, keyword_profile;
    if (mask & mask_of(Feature::cat_yelp)) yelp_profile = build_profile(user, collection, yelp);
    if (mask & mask_of(Feature::cat_foursquare)) {
      foursquare_profile = build_profile(user, collection, foursquare);
    }
    if (mask & mask_of(Feature::keyword)) {
      keyword_profile = keyword_profile_for_scoring(build_profile(user, collection, keywords),
                                                    options.keyword_selection, user.user_id);
    }
    ReviewClassifier classifier;
    if (mask & mask_of(Feature::review)) {
      classifier = train_review_classifier(user, collection, options.solver);
    }

    RawQuery query{request.user_id, {}};
    query.candidates.reserve(request.candidates.size());
    for (const auto& id : request.candidates) {
      const Venue& venue = collection.venue(id);
      RawScores s;
      s.venue_id = id;
      if (mask & mask_of(Feature::cat_yelp)) {
        s.values[0] = frequency_score(yelp_profile, yelp.items(venue));
      }
      if (mask & mask_of(Feature::cat_foursquare)) {
        s.values[1] = frequency_score(foursquare_profile, foursquare.items(venue));
      }
      if (mask & mask_of(Feature::review)) {
        const ReviewScore r = review_score(classifier, venue);
        s.values[2] = r.value;
        s.review_no_evidence = r.no_evidence;
      }
      if (mask & mask_of(Feature::keyword)) {
        s.values[3] = frequency_score(keyword_profile, keywords.items(venue));
      }
      if (const auto it = judgments.find(id); it != judgments.end()) s.label = it->second;
      query.candidates.push_back(std::move(s));
    }
    out.push_back(std::move(query));
  }
  return out;
}

void overwrite_scores(std::vector<RawQuery>& target, const std::vector<RawQuery>& source,
                      FeatureMask mask) {
  if (target.size() != source.size()) {
    throw ValidationError(kModule, "score tables cover different requests");
  }
  for (std::size_t q = 0; q < target.size(); ++q) {
    auto& t = target[q].candidates;
    const auto& s = source[q].candidates;
    if (t.size() != s.size()) throw ValidationError(kModule, "score tables differ in candidates");
    for (std::size_t c = 0; c < t.size(); ++c) {
      for (std::size_t f = 0; f < kFeatureCount; ++f) {
        if (mask & (1u << f)) t[c].values[f] = s[c].values[f];
      }
      if (mask & mask_of(Feature::review)) t[c].review_no_evidence = s[c].review_no_evidence;
    }
  }
}

void normalize_per_query(QueryFeatures& query) {
  if (query.candidates.empty()) return;
  const std::size_t d = query.candidates.front().values.size();
  for (std::size_t f = 0; f < d; ++f) {
    double lo = query.candidates.front().values[f];
    double hi = lo;
    for (const auto& c : query.candidates) {
      lo = std::min(lo, c.values[f]);
      hi = std::max(hi, c.values[f]);
    }
    const double range = hi - lo;
    for (auto& c : query.candidates) {
      c.values[f] = range > 0.0 ? (c.values[f] - lo) / range : 0.0;
    }
  }
}

std::vector<QueryFeatures> select_features(std::span<const RawQuery> raw,
                                           const FeatureSpec& spec) {
  std::vector<QueryFeatures> out;
  out.reserve(raw.size());
  for (const auto& rq : raw) {
    QueryFeatures q{rq.user_id, {}};
    q.candidates.reserve(rq.candidates.size());
    for (const auto& rs : rq.candidates) {
      FeatureVector v{rq.user_id, rs.venue_id, {}, rs.label};
      v.values.reserve(spec.features.size());
      for (const Feature f : spec.features) {
        const double value = rs.values[static_cast<std::size_t>(f)];
        if (!std::isfinite(value)) {
          throw ValidationError(kModule, "non-finite " + std::string(to_string(f)) + " for (" +
                                             rq.user_id + ", " + rs.venue_id + ")");
        }
        v.values.push_back(value);
      }
      q.candidates.push_back(std::move(v));
    }
    normalize_per_query(q);
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<QueryFeatures> assemble_features(const Collection& collection,
                                             const FeatureSpec& spec,
                                             const FeatureOptions& options) {
  FeatureMask mask = 0;
  for (const Feature f : spec.features) mask |= mask_of(f);
  const auto raw = compute_raw_scores(collection, options, mask);
  return select_features(raw, spec);
}

void write_feature_file(std::ostream& out, std::span<const QueryFeatures> queries,
                        std::string_view header) {
  if (!header.empty()) out << "# " << header << '\n';
  for (const auto& q : queries) {
    for (const auto& c : q.candidates) {
      if (!c.label) continue;
      out << *c.label << " qid:" << q.user_id;
      for (std::size_t f = 0; f < c.values.size(); ++f) {
        out << ' ' << (f + 1) << ':' << format_score(c.values[f]);
      }
      out << " # " << c.venue_id << '\n';
    }
  }
}

}  // namespace venuerec
