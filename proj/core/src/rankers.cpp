#include "venuerec/rankers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "venuerec/error.hpp"
#include "venuerec/metrics.hpp"
#include "venuerec/random.hpp"

namespace venuerec {

namespace {

constexpr const char* kModule = "rank-fusion";
constexpr double kGainEpsilon = 1e-12;

double logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// ln(1 + exp(-z)) without overflow.
double softplus_neg(double z) {
  return z > 0.0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
}

/// Judged candidates of one query, ordered by venue id so that index order
/// is the tie-break order.
struct LabeledQuery {
  std::vector<std::vector<double>> x;
  std::vector<int> labels;
  double ideal = 0.0;
};

std::vector<LabeledQuery> labeled_queries(std::span<const QueryFeatures> queries,
                                          std::size_t* n_features) {
  std::vector<LabeledQuery> out;
  std::size_t d = 0;
  bool have_d = false;
  for (const auto& q : queries) {
    std::vector<const FeatureVector*> judged;
    for (const auto& c : q.candidates) {
      if (!c.label) continue;
      if (!have_d) {
        d = c.values.size();
        have_d = true;
      } else if (c.values.size() != d) {
        throw ValidationError(kModule, "feature vectors differ in dimension");
      }
      judged.push_back(&c);
    }
    if (judged.empty()) continue;
    std::sort(judged.begin(), judged.end(), [](const FeatureVector* a, const FeatureVector* b) {
      return a->venue_id < b->venue_id;
    });
    LabeledQuery lq;
    for (const auto* c : judged) {
      lq.x.push_back(c->values);
      lq.labels.push_back(*c->label);
    }
    lq.ideal = ideal_dcg_at(lq.labels, kMetricCutoff);
    out.push_back(std::move(lq));
  }
  if (n_features) *n_features = d;
  return out;
}

bool has_signal(const LabeledQuery& q) {
  return std::adjacent_find(q.labels.begin(), q.labels.end(), std::not_equal_to<>()) !=
         q.labels.end();
}

void require_signal(const std::vector<LabeledQuery>& queries) {
  if (std::none_of(queries.begin(), queries.end(), has_signal)) throw NoRankingSignal(kModule);
}

/// nDCG@5 of ranking one query by `scores`, ties by index.
double query_ndcg(const LabeledQuery& q, std::span<const double> scores) {
  if (q.ideal <= 0.0) return 0.0;
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t top = std::min(kMetricCutoff, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (scores[a] != scores[b]) return scores[a] > scores[b];
                      return a < b;
                    });
  int ratings[kMetricCutoff];
  for (std::size_t i = 0; i < top; ++i) ratings[i] = q.labels[order[i]];
  return dcg_at(std::span<const int>(ratings, top), kMetricCutoff) / q.ideal;
}

double linear_query_ndcg(const LabeledQuery& q, std::span<const double> w,
                         std::vector<double>& scratch) {
  scratch.resize(q.x.size());
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    double s = 0.0;
    for (std::size_t f = 0; f < w.size(); ++f) s += w[f] * q.x[i][f];
    scratch[i] = s;
  }
  return query_ndcg(q, scratch);
}

double mean_linear_ndcg(const std::vector<LabeledQuery>& queries, std::span<const double> w,
                        std::vector<double>& scratch) {
  double sum = 0.0;
  for (const auto& q : queries) sum += linear_query_ndcg(q, w, scratch);
  return queries.empty() ? 0.0 : sum / static_cast<double>(queries.size());
}

void normalize_l1(std::vector<double>& w) {
  double s = 0.0;
  for (const double v : w) s += std::abs(v);
  if (s > 0.0) {
    for (double& v : w) v /= s;
  }
}

TrainedRanker linear_ranker(RankerKind kind, std::vector<double> weights) {
  TrainedRanker r;
  r.kind = kind;
  r.n_features = weights.size();
  r.parameters = std::move(weights);
  return r;
}

}  // namespace

std::string_view to_string(RankerKind kind) noexcept {
  switch (kind) {
    case RankerKind::pairwise_neural: return "pairwise-neural";
    case RankerKind::coordinate_ascent: return "coordinate-ascent";
    case RankerKind::adarank: return "adarank";
    case RankerKind::linear_interpolation: return "linear-interpolation";
  }
  return "unknown";
}

RankerKind parse_ranker_kind(std::string_view name) {
  for (const auto kind : {RankerKind::pairwise_neural, RankerKind::coordinate_ascent,
                          RankerKind::adarank, RankerKind::linear_interpolation}) {
    if (name == to_string(kind)) return kind;
  }
  throw ConfigError(kModule, "unknown ranker kind '" + std::string(name) + "'");
}

double TrainedRanker::score(std::span<const double> x) const {
  if (x.size() != n_features) {
    throw ValidationError(kModule, "feature vector has " + std::to_string(x.size()) +
                                       " values, ranker expects " + std::to_string(n_features));
  }
  if (kind == RankerKind::pairwise_neural) {
    return neural::output(parameters, n_features, hidden_units, x);
  }
  double s = 0.0;
  for (std::size_t f = 0; f < n_features; ++f) s += parameters[f] * x[f];
  return s;
}

TrainedRanker train_coordinate_ascent(std::span<const QueryFeatures> train,
                                      const CoordinateAscentOptions& options) {
  std::size_t d = 0;
  const auto queries = labeled_queries(train, &d);
  require_signal(queries);
  if (options.grid_points < 2 || options.restarts < 1) {
    throw ConfigError(kModule, "coordinate ascent needs >= 2 grid points and >= 1 restart");
  }
  Rng rng(derive_seed(options.seed, "coordinate-ascent"));
  std::vector<double> scratch;
  std::vector<double> best_w(d, 1.0 / static_cast<double>(d));
  double best = -1.0;
  for (int restart = 0; restart < options.restarts; ++restart) {
    std::vector<double> w(d, 1.0 / static_cast<double>(d));
    if (restart > 0) {
      for (double& v : w) v = rng.uniform(-1.0, 1.0);
      normalize_l1(w);
    }
    double current = mean_linear_ndcg(queries, w, scratch);
    for (int cycle = 0; cycle < options.max_cycles; ++cycle) {
      bool improved = false;
      for (std::size_t f = 0; f < d; ++f) {
        const double origin = w[f];
        double best_value = origin;
        double best_score = current;
        for (int g = 0; g < options.grid_points; ++g) {
          const double step = -1.0 + 2.0 * g / (options.grid_points - 1);
          if (step == 0.0) continue;
          w[f] = origin + step;
          const double s = mean_linear_ndcg(queries, w, scratch);
          if (s > best_score + kGainEpsilon) {
            best_score = s;
            best_value = w[f];
          }
        }
        w[f] = best_value;
        if (best_value != origin) {
          normalize_l1(w);
          current = best_score;
          improved = true;
        }
      }
      if (!improved) break;
    }
    if (current > best + kGainEpsilon) {
      best = current;
      best_w = w;
    }
  }
  return linear_ranker(RankerKind::coordinate_ascent, std::move(best_w));
}

namespace neural {

std::size_t parameter_count(std::size_t features, std::size_t hidden) {
  return hidden * features + 2 * hidden;
}

double output(std::span<const double> params, std::size_t features, std::size_t hidden,
              std::span<const double> x) {
  const double* w1 = params.data();
  const double* b1 = w1 + hidden * features;
  const double* w2 = b1 + hidden;
  double s = 0.0;
  for (std::size_t h = 0; h < hidden; ++h) {
    double z = b1[h];
    for (std::size_t f = 0; f < features; ++f) z += w1[h * features + f] * x[f];
    s += w2[h] * logistic(z);
  }
  return s;
}

namespace {

// Adds coefficient * ∂s(x)/∂params into gradient.
void add_output_gradient(std::span<const double> params, std::size_t features, std::size_t hidden,
                         std::span<const double> x, double coefficient,
                         std::span<double> gradient) {
  const double* w1 = params.data();
  const double* b1 = w1 + hidden * features;
  const double* w2 = b1 + hidden;
  double* g_w1 = gradient.data();
  double* g_b1 = g_w1 + hidden * features;
  double* g_w2 = g_b1 + hidden;
  for (std::size_t h = 0; h < hidden; ++h) {
    double z = b1[h];
    for (std::size_t f = 0; f < features; ++f) z += w1[h * features + f] * x[f];
    const double a = logistic(z);
    g_w2[h] += coefficient * a;
    const double back = coefficient * w2[h] * a * (1.0 - a);
    g_b1[h] += back;
    for (std::size_t f = 0; f < features; ++f) g_w1[h * features + f] += back * x[f];
  }
}

}  // namespace

double pair_loss(std::span<const double> params, std::size_t features, std::size_t hidden,
                 std::span<const double> better, std::span<const double> worse) {
  const double diff = output(params, features, hidden, better) -
                      output(params, features, hidden, worse);
  return softplus_neg(diff);
}

void add_pair_gradient(std::span<const double> params, std::size_t features, std::size_t hidden,
                       std::span<const double> better, std::span<const double> worse,
                       std::span<double> gradient) {
  const double diff = output(params, features, hidden, better) -
                      output(params, features, hidden, worse);
  const double rho = logistic(-diff);
  add_output_gradient(params, features, hidden, better, -rho, gradient);
  add_output_gradient(params, features, hidden, worse, rho, gradient);
}

double query_loss(std::span<const double> params, std::size_t features, std::size_t hidden,
                  std::span<const std::vector<double>> docs,
                  std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  std::vector<double> s(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) s[i] = output(params, features, hidden, docs[i]);
  double loss = 0.0;
  for (const auto& [better, worse] : pairs) loss += softplus_neg(s[better] - s[worse]);
  return loss;
}

void add_query_gradient(std::span<const double> params, std::size_t features, std::size_t hidden,
                        std::span<const std::vector<double>> docs,
                        std::span<const std::pair<std::size_t, std::size_t>> pairs,
                        std::span<double> gradient) {
  std::vector<double> s(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) s[i] = output(params, features, hidden, docs[i]);
  std::vector<double> lambda(docs.size(), 0.0);
  for (const auto& [better, worse] : pairs) {
    const double rho = logistic(-(s[better] - s[worse]));
    lambda[better] -= rho;
    lambda[worse] += rho;
  }
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (lambda[i] != 0.0) add_output_gradient(params, features, hidden, docs[i], lambda[i], gradient);
  }
}

}  // namespace neural

TrainedRanker train_pairwise_neural(std::span<const QueryFeatures> train,
                                    const PairwiseNeuralOptions& options) {
  std::size_t d = 0;
  const auto queries = labeled_queries(train, &d);
  require_signal(queries);
  if (options.hidden_units < 1 || options.epochs < 0) {
    throw ConfigError(kModule, "pairwise neural ranker needs >= 1 hidden unit");
  }
  const auto hidden = static_cast<std::size_t>(options.hidden_units);

  struct QueryPairs {
    std::size_t query;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
  };
  std::vector<QueryPairs> work;
  for (std::size_t q = 0; q < queries.size(); ++q) {
    QueryPairs qp{q, {}};
    const auto& labels = queries[q].labels;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      for (std::size_t j = 0; j < labels.size(); ++j) {
        if (labels[i] > labels[j]) qp.pairs.emplace_back(i, j);
      }
    }
    if (!qp.pairs.empty()) work.push_back(std::move(qp));
  }

  Rng rng(derive_seed(options.seed, "pairwise-neural"));
  TrainedRanker ranker;
  ranker.kind = RankerKind::pairwise_neural;
  ranker.n_features = d;
  ranker.hidden_units = hidden;
  ranker.parameters.resize(neural::parameter_count(d, hidden));
  for (double& p : ranker.parameters) p = rng.uniform(-options.init_range, options.init_range);

  std::vector<double> gradient(ranker.parameters.size());
  std::vector<std::size_t> order(work.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (const std::size_t w : order) {
      std::fill(gradient.begin(), gradient.end(), 0.0);
      neural::add_query_gradient(ranker.parameters, d, hidden, queries[work[w].query].x,
                                 work[w].pairs, gradient);
      for (std::size_t p = 0; p < gradient.size(); ++p) {
        ranker.parameters[p] -= options.learning_rate * gradient[p];
      }
    }
  }
  return ranker;
}

TrainedRanker train_adarank(std::span<const QueryFeatures> train, const AdaRankOptions& options,
                            AdaRankTrace* trace) {
  std::size_t d = 0;
  auto queries = labeled_queries(train, &d);
  require_signal(queries);
  // Queries without any gain cannot be improved and only dilute the weights.
  std::erase_if(queries, [](const LabeledQuery& q) { return q.ideal <= 0.0; });
  const std::size_t m = queries.size();

  std::vector<std::vector<double>> single(d, std::vector<double>(m));
  std::vector<double> scratch;
  for (std::size_t f = 0; f < d; ++f) {
    std::vector<double> unit(d, 0.0);
    unit[f] = 1.0;
    for (std::size_t q = 0; q < m; ++q) single[f][q] = linear_query_ndcg(queries[q], unit, scratch);
  }

  std::vector<double> weight(m, 1.0 / static_cast<double>(m));
  std::vector<double> ensemble(d, 0.0);
  std::size_t previous = d;
  double previous_perf = -1.0;
  if (trace) trace->rounds.clear();

  for (int round = 0; round < options.max_rounds; ++round) {
    std::size_t chosen = 0;
    double chosen_value = -1.0;
    for (std::size_t f = 0; f < d; ++f) {
      double v = 0.0;
      for (std::size_t q = 0; q < m; ++q) v += weight[q] * single[f][q];
      if (v > chosen_value + kGainEpsilon) {
        chosen_value = v;
        chosen = f;
      }
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t q = 0; q < m; ++q) {
      num += weight[q] * (1.0 + single[chosen][q]);
      den += weight[q] * (1.0 - single[chosen][q]);
    }
    const double alpha = 0.5 * std::log(num / std::max(den, kGainEpsilon));

    std::vector<double> candidate = ensemble;
    candidate[chosen] += alpha;
    std::vector<double> per_query(m);
    double perf = 0.0;
    for (std::size_t q = 0; q < m; ++q) {
      per_query[q] = linear_query_ndcg(queries[q], candidate, scratch);
      perf += per_query[q];
    }
    perf /= static_cast<double>(m);
    if (chosen == previous && perf <= previous_perf + kGainEpsilon) break;

    ensemble = std::move(candidate);
    previous = chosen;
    previous_perf = perf;
    if (trace) trace->rounds.emplace_back(chosen, alpha);

    double z = 0.0;
    for (std::size_t q = 0; q < m; ++q) {
      weight[q] = std::exp(-per_query[q]);
      z += weight[q];
    }
    for (double& w : weight) w /= z;
  }
  return linear_ranker(RankerKind::adarank, std::move(ensemble));
}

TrainedRanker train_linear_interpolation(std::span<const QueryFeatures> train,
                                         const LinearInterpolationOptions& options,
                                         std::size_t* evaluated) {
  std::size_t d = 0;
  const auto queries = labeled_queries(train, &d);
  require_signal(queries);
  if (options.step <= 0.0 || options.step > 1.0) {
    throw ConfigError(kModule, "interpolation step must lie in (0, 1]");
  }
  const int units = static_cast<int>(std::lround(1.0 / options.step));

  std::vector<double> scratch;
  std::vector<double> best_w(d, 0.0);
  double best = -1.0;
  std::size_t count = 0;
  std::vector<int> parts(d, 0);
  // Enumerate compositions of `units` into d non-negative parts, lexicographically.
  const auto visit = [&](auto&& self, std::size_t index, int remaining) -> void {
    if (index + 1 == d) {
      parts[index] = remaining;
      std::vector<double> w(d);
      for (std::size_t f = 0; f < d; ++f) w[f] = static_cast<double>(parts[f]) / units;
      ++count;
      const double s = mean_linear_ndcg(queries, w, scratch);
      if (s > best + kGainEpsilon) {
        best = s;
        best_w = w;
      }
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      parts[index] = v;
      self(self, index + 1, remaining - v);
    }
  };
  if (d > 0) visit(visit, 0, units);
  if (evaluated) *evaluated = count;
  return linear_ranker(RankerKind::linear_interpolation, std::move(best_w));
}

TrainedRanker train_ranker(RankerKind kind, std::span<const QueryFeatures> train,
                           const RankerOptions& options) {
  switch (kind) {
    case RankerKind::pairwise_neural: return train_pairwise_neural(train, options.pairwise_neural);
    case RankerKind::coordinate_ascent:
      return train_coordinate_ascent(train, options.coordinate_ascent);
    case RankerKind::adarank: return train_adarank(train, options.adarank);
    case RankerKind::linear_interpolation:
      return train_linear_interpolation(train, options.linear_interpolation);
  }
  throw ConfigError(kModule, "unknown ranker kind");
}

std::vector<ScoredVenue> rank(const TrainedRanker& ranker, const QueryFeatures& query) {
  std::vector<ScoredVenue> scored;
  scored.reserve(query.candidates.size());
  for (const auto& c : query.candidates) scored.push_back({c.venue_id, ranker.score(c.values)});
  std::sort(scored.begin(), scored.end(), [](const ScoredVenue& a, const ScoredVenue& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.venue_id < b.venue_id;
  });
  if (scored.size() > kMaxRankedListLength) scored.resize(kMaxRankedListLength);
  return scored;
}

RankedList rank_query(const TrainedRanker& ranker, const QueryFeatures& query) {
  return {query.user_id, rank(ranker, query)};
}

double mean_training_ndcg(const TrainedRanker& ranker, std::span<const QueryFeatures> queries) {
  std::size_t d = 0;
  const auto labeled = labeled_queries(queries, &d);
  if (labeled.empty()) return 0.0;
  double sum = 0.0;
  std::vector<double> scores;
  for (const auto& q : labeled) {
    scores.resize(q.x.size());
    for (std::size_t i = 0; i < q.x.size(); ++i) scores[i] = ranker.score(q.x[i]);
    sum += query_ndcg(q, scores);
  }
  return sum / static_cast<double>(labeled.size());
}

}  // namespace venuerec
