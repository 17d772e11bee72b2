#include "venuerec/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "venuerec/error.hpp"
#include "venuerec/random.hpp"

namespace venuerec {

namespace {

constexpr const char* kModule = "ingest";

// Filler that the tokenizer drops and generic words carrying no preference.
const std::vector<std::string> kFiller = {"the", "and", "was", "we", "it", "with",
                                          "our", "very", "this", "there", "had", "for"};
const std::vector<std::string> kGeneric = {"place", "visit", "time",  "staff",   "menu",
                                           "price", "area",  "night", "weekend", "friends"};
constexpr int kWordsPerPolarityPool = 12;

std::string pad(int value, int width) {
  std::string s = std::to_string(value);
  if (static_cast<int>(s.size()) < width) s.insert(0, width - s.size(), '0');
  return s;
}

int clamp_round(double value, int lo, int hi) {
  return std::clamp(static_cast<int>(std::lround(value)), lo, hi);
}

struct TopicMixture {
  int dominant = 0;
  std::vector<double> mass;
};

TopicMixture draw_mixture(Rng& rng, int topics) {
  TopicMixture m;
  m.mass.assign(topics, 0.0);
  m.dominant = static_cast<int>(rng.below(topics));
  if (topics == 1) {
    m.mass[0] = 1.0;
    return m;
  }
  int secondary = static_cast<int>(rng.below(topics - 1));
  if (secondary >= m.dominant) ++secondary;
  const double share = rng.uniform(0.6, 0.9);
  m.mass[m.dominant] = share;
  m.mass[secondary] = 1.0 - share;
  return m;
}

int draw_topic(Rng& rng, const std::vector<double>& mass) {
  double u = rng.uniform();
  for (std::size_t t = 0; t < mass.size(); ++t) {
    u -= mass[t];
    if (u < 0.0) return static_cast<int>(t);
  }
  for (std::size_t t = mass.size(); t > 0; --t) {
    if (mass[t - 1] > 0.0) return static_cast<int>(t - 1);
  }
  return 0;
}

// Items of vocabulary `prefix` assigned round-robin to topics.
std::string topic_item(const std::string& prefix, int topic, int slot, int topics, int vocab) {
  const int per_topic = std::max(1, vocab / topics);
  const int index = std::min(vocab - 1, (slot % per_topic) * topics + topic);
  return prefix + pad(index, 4);
}

std::vector<std::string> draw_categories(Rng& rng, const std::string& prefix,
                                         const TopicMixture& mix, int topics, int vocab) {
  const int count = static_cast<int>(rng.between(1, 3));
  const int per_topic = std::max(1, vocab / topics);
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) {
    // Categories are a coarse, noisy view of the venue topic.
    if (rng.bernoulli(0.45)) {
      out.push_back(topic_item(prefix, mix.dominant, static_cast<int>(rng.below(per_topic)),
                               topics, vocab));
    } else {
      out.push_back(prefix + pad(static_cast<int>(rng.below(vocab)), 4));
    }
  }
  return normalize_item_set(out);
}

struct Author {
  std::string id;
  std::int64_t review_count = 1;
  double noise = 0.0;
};

std::string review_text(Rng& rng, const TopicMixture& mix, int rating, double noise,
                        int topics) {
  const int words = static_cast<int>(rng.between(10, 22));
  std::string text;
  for (int w = 0; w < words; ++w) {
    if (!text.empty()) text += ' ';
    const double u = rng.uniform();
    if (u < 0.25) {
      text += kFiller[rng.below(kFiller.size())];
      continue;
    }
    if (u < 0.40) {
      text += kGeneric[rng.below(kGeneric.size())];
      continue;
    }
    int topic = draw_topic(rng, mix.mass);
    if (rng.bernoulli(noise)) topic = static_cast<int>(rng.below(topics));
    bool praise = rating >= 4;
    if (rating == 3) praise = rng.bernoulli(0.5);
    if (rng.bernoulli(0.5 * noise)) praise = !praise;
    text += praise ? "praise" : "gripe";
    text += pad(topic, 2) + "w" + pad(static_cast<int>(rng.below(kWordsPerPolarityPool)), 2);
  }
  return text;
}

}  // namespace

void SyntheticSpec::validate() const {
  const auto positive = [](int v, const char* name) {
    if (v < 1) throw ConfigError(kModule, std::string(name) + " must be >= 1");
  };
  positive(n_users, "n_users");
  positive(n_venues, "n_venues");
  positive(n_keywords_vocab, "n_keywords_vocab");
  positive(n_categories_vocab, "n_categories_vocab");
  positive(preference_dimensions, "preference_dimensions");
  positive(n_cities, "n_cities");
  positive(history_size, "history_size");
  positive(candidates_per_user, "candidates_per_user");
  if (reviews_per_venue_min < 0 || reviews_per_venue_max < reviews_per_venue_min) {
    throw ConfigError(kModule, "reviews_per_venue range must satisfy 0 <= min <= max");
  }
  if (n_venues < 2 * n_cities) {
    throw ConfigError(kModule, "n_venues must be at least twice n_cities");
  }
}

SyntheticDataset generate_synthetic_dataset(const SyntheticSpec& spec) {
  spec.validate();
  const int topics = spec.preference_dimensions;
  SyntheticDataset out;
  Collection& c = out.collection;

  Rng rng(derive_seed(spec.seed, "synthetic"));

  // Reviewer pool; activity drives review_count and text reliability.
  const int n_authors = std::max(50, spec.n_venues / 2);
  std::vector<Author> authors(n_authors);
  for (int a = 0; a < n_authors; ++a) {
    authors[a].id = "a" + pad(a, 5);
    authors[a].review_count =
        1 + static_cast<std::int64_t>(std::floor(std::exp(2.0 + 1.2 * rng.normal())));
    authors[a].noise = 0.35 / (1.0 + std::log1p(static_cast<double>(authors[a].review_count)));
  }

  std::vector<std::string> venue_ids;
  std::vector<TopicMixture> mixtures;
  std::vector<double> quality;
  for (int v = 0; v < spec.n_venues; ++v) {
    Venue venue;
    venue.id = "v" + pad(v, 5);
    venue.city = "city" + pad(v % spec.n_cities, 2);
    const TopicMixture mix = draw_mixture(rng, topics);
    const double q = rng.uniform(-0.5, 0.5);

    const int n_keywords = static_cast<int>(rng.between(4, 14));
    std::vector<std::string> keywords;
    const int per_topic = std::max(1, spec.n_keywords_vocab / topics);
    for (int k = 0; k < n_keywords; ++k) {
      // Some keywords are idiosyncratic and unrelated to the venue topics.
      if (rng.bernoulli(0.3)) {
        keywords.push_back("kw" + pad(static_cast<int>(rng.below(spec.n_keywords_vocab)), 4));
        continue;
      }
      const int topic = draw_topic(rng, mix.mass);
      // Keyword popularity within a topic is long-tailed.
      const int slot = std::min(per_topic - 1,
                                static_cast<int>(per_topic * std::pow(rng.uniform(), 2.5)));
      keywords.push_back(topic_item("kw", topic, slot, topics, spec.n_keywords_vocab));
    }
    venue.keywords = normalize_item_set(keywords);
    venue.categories_yelp = draw_categories(rng, "ycat", mix, topics, spec.n_categories_vocab);
    venue.categories_foursquare =
        draw_categories(rng, "fcat", mix, topics, spec.n_categories_vocab);

    const int n_reviews =
        static_cast<int>(rng.between(spec.reviews_per_venue_min, spec.reviews_per_venue_max));
    for (int r = 0; r < n_reviews; ++r) {
      const Author& author = authors[rng.below(authors.size())];
      Review review;
      review.venue_id = venue.id;
      review.author_id = author.id;
      const double spread = 0.6 + 2.0 * author.noise;
      review.rating = clamp_round(3.7 + 2.5 * q + spread * rng.normal(), kMinReviewRating,
                                  kMaxReviewRating);
      review.timestamp = 1300000000 + static_cast<std::int64_t>(rng.below(200000000));
      review.author_review_count = author.review_count;
      review.text = review_text(rng, mix, review.rating, author.noise, topics);
      venue.reviews.push_back(std::move(review));
    }

    out.venue_topics[venue.id] = mix.mass;
    venue_ids.push_back(venue.id);
    mixtures.push_back(mix);
    quality.push_back(q);
    c.venues.emplace(venue.id, std::move(venue));
  }

  std::vector<std::vector<int>> city_venues(spec.n_cities);
  for (int v = 0; v < spec.n_venues; ++v) city_venues[v % spec.n_cities].push_back(v);

  for (int u = 0; u < spec.n_users; ++u) {
    UserHistory user;
    user.user_id = "u" + pad(u, 4);
    user.age_group = std::vector<std::string>{"18-24", "25-34", "35-49", "50+"}[rng.below(4)];
    user.gender = rng.bernoulli(0.5) ? "female" : "male";

    // Two liked and two disliked topics stand out against a weak background.
    std::vector<double> pref(topics);
    for (auto& p : pref) p = std::clamp(0.25 * rng.normal(), -0.5, 0.5);
    std::vector<int> order(topics);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(std::span<int>(order));
    for (int t = 0; t < std::min(2, topics); ++t) pref[order[t]] = 1.0;
    for (int t = 2; t < std::min(4, topics); ++t) pref[order[t]] = -1.0;

    const auto rate = [&](int v) {
      double dot = 0.0;
      for (int t = 0; t < topics; ++t) dot += pref[t] * mixtures[v].mass[t];
      return clamp_round(2.0 + 2.2 * dot + 0.8 * quality[v] + 0.5 * rng.normal(),
                         kMinUserRating, kMaxUserRating);
    };

    const int city = static_cast<int>(rng.below(spec.n_cities));
    std::vector<int> pool = city_venues[city];
    rng.shuffle(std::span<int>(pool));
    const std::size_t n_candidates =
        std::min<std::size_t>(spec.candidates_per_user, pool.size() - 1);
    std::vector<int> candidates(pool.begin(), pool.begin() + n_candidates);
    std::sort(candidates.begin(), candidates.end());

    std::vector<int> rest;
    const std::set<int> taken(candidates.begin(), candidates.end());
    for (int v = 0; v < spec.n_venues; ++v) {
      if (!taken.contains(v)) rest.push_back(v);
    }
    rng.shuffle(std::span<int>(rest));
    const std::size_t n_history = std::min<std::size_t>(spec.history_size, rest.size());
    std::vector<int> history(rest.begin(), rest.begin() + n_history);
    std::sort(history.begin(), history.end());

    for (int v : history) user.rated_venues.push_back({venue_ids[v], rate(v)});

    RankingRequest request;
    request.user_id = user.user_id;
    request.city = "city" + pad(city, 2);
    for (int v : candidates) {
      request.candidates.push_back(venue_ids[v]);
      c.qrels[{user.user_id, venue_ids[v]}] = rate(v);
    }
    out.user_preferences[user.user_id] = pref;
    c.requests.push_back(std::move(request));
    c.users.emplace(user.user_id, std::move(user));
  }

  validate_collection(c);
  return out;
}

Collection generate_synthetic(const SyntheticSpec& spec) {
  return generate_synthetic_dataset(spec).collection;
}

}  // namespace venuerec
