#include "venuerec/cross_validation.hpp"

#include <algorithm>
#include <map>

#include "venuerec/error.hpp"
#include "venuerec/metrics.hpp"
#include "venuerec/parallel.hpp"
#include "venuerec/random.hpp"

namespace venuerec {

namespace {

constexpr const char* kModule = "eval";

UserMetrics score_user(const std::string& user_id, const RankedList* run,
                       const Judgments& judgments) {
  UserMetrics m;
  m.user_id = user_id;
  if (run == nullptr) return m;
  const auto ids = venue_ids(*run);
  m.precision5 = precision_at_5(ids, judgments);
  m.ndcg5 = ndcg_at_5(ids, judgments);
  m.reciprocal_rank = reciprocal_rank(ids, judgments);
  return m;
}

}  // namespace

std::string_view to_string(Metric m) noexcept {
  switch (m) {
    case Metric::precision5: return "P@5";
    case Metric::ndcg5: return "nDCG@5";
    case Metric::mrr: return "MRR";
  }
  return "unknown";
}

double UserMetrics::get(Metric m) const {
  switch (m) {
    case Metric::precision5: return precision5;
    case Metric::ndcg5: return ndcg5;
    case Metric::mrr: return reciprocal_rank;
  }
  return 0.0;
}

double MetricReport::mean(Metric m) const {
  switch (m) {
    case Metric::precision5: return mean_precision5;
    case Metric::ndcg5: return mean_ndcg5;
    case Metric::mrr: return mean_mrr;
  }
  return 0.0;
}

std::vector<double> MetricReport::per_user(Metric m) const {
  std::vector<double> out;
  out.reserve(users.size());
  for (const auto& u : users) out.push_back(u.get(m));
  return out;
}

double MetricReport::fold_mean(int fold, Metric m) const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& u : users) {
    if (u.fold != fold) continue;
    sum += u.get(m);
    ++n;
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

void MetricReport::recompute_means() {
  std::sort(users.begin(), users.end(),
            [](const UserMetrics& a, const UserMetrics& b) { return a.user_id < b.user_id; });
  std::sort(runs.begin(), runs.end(),
            [](const RankedList& a, const RankedList& b) { return a.user_id < b.user_id; });
  mean_precision5 = mean_ndcg5 = mean_mrr = 0.0;
  if (users.empty()) return;
  for (const auto& u : users) {
    mean_precision5 += u.precision5;
    mean_ndcg5 += u.ndcg5;
    mean_mrr += u.reciprocal_rank;
  }
  const double n = static_cast<double>(users.size());
  mean_precision5 /= n;
  mean_ndcg5 /= n;
  mean_mrr /= n;
}

std::map<std::string, Judgments, std::less<>> judgments_by_user(const Collection& collection) {
  std::map<std::string, Judgments, std::less<>> out;
  for (const auto& [key, rating] : collection.qrels) out[key.first].emplace(key.second, rating);
  return out;
}

MetricReport evaluate_runs(std::span<const RankedList> runs,
                           const std::map<std::string, Judgments, std::less<>>& judgments,
                           std::string model) {
  std::map<std::string_view, const RankedList*> by_user;
  for (const auto& r : runs) by_user[r.user_id] = &r;
  MetricReport report;
  report.model = std::move(model);
  for (const auto& [user, judged] : judgments) {
    const auto it = by_user.find(user);
    report.users.push_back(score_user(user, it == by_user.end() ? nullptr : it->second, judged));
    if (it != by_user.end()) report.runs.push_back(*it->second);
  }
  report.recompute_means();
  return report;
}

std::vector<int> assign_folds(std::span<const std::string> user_ids, int folds,
                              std::uint64_t seed) {
  if (folds < 2) throw ConfigError(kModule, "cross-validation needs at least 2 folds");
  if (user_ids.size() < static_cast<std::size_t>(folds)) {
    throw ConfigError(kModule, "cross-validation needs at least " + std::to_string(folds) +
                                   " users, got " + std::to_string(user_ids.size()));
  }
  std::vector<std::size_t> order(user_ids.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return user_ids[a] < user_ids[b]; });
  Rng rng(derive_seed(seed, "folds"));
  rng.shuffle(std::span<std::size_t>(order));
  std::vector<int> fold(user_ids.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    fold[order[pos]] = static_cast<int>(pos % static_cast<std::size_t>(folds));
  }
  return fold;
}

MetricReport cross_validate_queries(std::span<const QueryFeatures> queries,
                                    const Collection& collection, std::string model,
                                    const CrossValidationOptions& options) {
  std::vector<std::string> ids;
  ids.reserve(queries.size());
  for (const auto& q : queries) ids.push_back(q.user_id);
  const auto fold_of = assign_folds(ids, options.folds, options.seed);
  const auto judgments = judgments_by_user(collection);
  const bool seeded = options.kind == RankerKind::pairwise_neural ||
                      options.kind == RankerKind::coordinate_ascent;
  const int grid = seeded ? std::max(1, options.seed_grid) : 1;

  std::vector<std::vector<UserMetrics>> fold_users(options.folds);
  std::vector<std::vector<RankedList>> fold_runs(options.folds);
  parallel_for(static_cast<std::size_t>(options.folds), [&](std::size_t f) {
    const int fold = static_cast<int>(f);
    std::vector<QueryFeatures> train;
    for (std::size_t q = 0; q < queries.size(); ++q) {
      if (fold_of[q] != fold) train.push_back(queries[q]);
    }
    TrainedRanker best;
    double best_score = -1.0;
    for (int g = 0; g < grid; ++g) {
      RankerOptions ro = options.ranker;
      if (seeded) {
        ro.set_seed(derive_seed(options.seed, "fold-" + std::to_string(fold) + "-grid-" +
                                                  std::to_string(g)));
      }
      TrainedRanker candidate = train_ranker(options.kind, train, ro);
      const double s = mean_training_ndcg(candidate, train);
      if (s > best_score) {
        best_score = s;
        best = std::move(candidate);
      }
    }
    for (std::size_t q = 0; q < queries.size(); ++q) {
      if (fold_of[q] != fold) continue;
      RankedList run = rank_query(best, queries[q]);
      const auto it = judgments.find(queries[q].user_id);
      static const Judgments kNone;
      UserMetrics m = score_user(queries[q].user_id, &run,
                                 it == judgments.end() ? kNone : it->second);
      m.fold = fold;
      fold_users[f].push_back(std::move(m));
      fold_runs[f].push_back(std::move(run));
    }
  });

  MetricReport report;
  report.model = std::move(model);
  for (int f = 0; f < options.folds; ++f) {
    for (auto& u : fold_users[f]) report.users.push_back(std::move(u));
    for (auto& r : fold_runs[f]) report.runs.push_back(std::move(r));
  }
  report.recompute_means();
  return report;
}

std::vector<MetricReport> cross_validate(const Collection& collection,
                                         std::span<const RawQuery> raw,
                                         std::span<const FeatureSpec> specs,
                                         const CrossValidationOptions& options) {
  std::vector<MetricReport> out;
  for (const auto& spec : specs) {
    const auto queries = select_features(raw, spec);
    CrossValidationOptions o = options;
    if (spec.name == "LinearCatRev") o.kind = RankerKind::linear_interpolation;
    out.push_back(cross_validate_queries(queries, collection, spec.name, o));
  }
  return out;
}

std::vector<MetricReport> cross_validate(const Collection& collection,
                                         std::span<const FeatureSpec> specs,
                                         const CrossValidationOptions& options,
                                         const FeatureOptions& feature_options) {
  FeatureMask mask = 0;
  for (const auto& spec : specs) {
    for (const Feature f : spec.features) mask |= mask_of(f);
  }
  const auto raw = compute_raw_scores(collection, feature_options, mask);
  return cross_validate(collection, raw, specs, options);
}

MetricReport random_baseline(const Collection& collection, int permutations, std::uint64_t seed) {
  if (permutations < 1) throw ConfigError(kModule, "random baseline needs >= 1 permutation");
  MetricReport report;
  report.model = "Random";
  for (const auto& request : collection.requests) {
    const Judgments judgments = collection.judgments_for(request.user_id);
    Rng rng(derive_seed(seed, "random-baseline/" + request.user_id));
    std::vector<std::string> order = request.candidates;
    std::sort(order.begin(), order.end());
    UserMetrics m;
    m.user_id = request.user_id;
    for (int p = 0; p < permutations; ++p) {
      rng.shuffle(std::span<std::string>(order));
      const auto top = std::span<const std::string>(order).first(
          std::min(order.size(), kMaxRankedListLength));
      m.precision5 += precision_at_5(top, judgments);
      m.ndcg5 += ndcg_at_5(top, judgments);
      m.reciprocal_rank += reciprocal_rank(top, judgments);
    }
    m.precision5 /= permutations;
    m.ndcg5 /= permutations;
    m.reciprocal_rank /= permutations;
    report.users.push_back(std::move(m));
  }
  report.recompute_means();
  return report;
}

}  // namespace venuerec
