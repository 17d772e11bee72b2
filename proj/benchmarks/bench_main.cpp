#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "venuerec/classifier.hpp"
#include "venuerec/features.hpp"
#include "venuerec/metrics.hpp"
#include "venuerec/random.hpp"
#include "venuerec/rankers.hpp"
#include "venuerec/review_model.hpp"
#include "venuerec/synthetic.hpp"

using namespace venuerec;

namespace {

const Collection& bench_collection() {
  static const Collection c = [] {
    SyntheticSpec spec;
    spec.n_users = 20;
    spec.n_venues = 300;
    spec.seed = 1;
    return generate_synthetic(spec);
  }();
  return c;
}

const std::vector<QueryFeatures>& bench_queries() {
  static const auto q = assemble_features(bench_collection(), FeatureSpec::variant("LTR-All"));
  return q;
}

void BM_Ndcg5(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  Judgments j;
  std::vector<std::string> ranked;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = "v" + std::to_string(i);
    j[id] = static_cast<int>(rng.below(5));
    ranked.push_back(id);
  }
  for (auto _ : state) benchmark::DoNotOptimize(ndcg_at_5(ranked, j));
}
BENCHMARK(BM_Ndcg5)->Arg(30)->Arg(300);

void BM_SvmTrain(benchmark::State& state) {
  const auto& c = bench_collection();
  const auto& user = c.users.begin()->second;
  for (auto _ : state) benchmark::DoNotOptimize(train_review_classifier(user, c));
}
BENCHMARK(BM_SvmTrain)->Unit(benchmark::kMillisecond);

void BM_RawScores(benchmark::State& state) {
  const auto& c = bench_collection();
  for (auto _ : state) benchmark::DoNotOptimize(compute_raw_scores(c));
}
BENCHMARK(BM_RawScores)->Unit(benchmark::kMillisecond);

void BM_Train(benchmark::State& state) {
  const auto kind = static_cast<RankerKind>(state.range(0));
  state.SetLabel(std::string(to_string(kind)));
  const auto& q = bench_queries();
  for (auto _ : state) benchmark::DoNotOptimize(train_ranker(kind, q));
}
BENCHMARK(BM_Train)
    ->Arg(static_cast<int>(RankerKind::pairwise_neural))
    ->Arg(static_cast<int>(RankerKind::coordinate_ascent))
    ->Arg(static_cast<int>(RankerKind::adarank))
    ->Unit(benchmark::kMillisecond);

void BM_Interpolation(benchmark::State& state) {
  const auto q = assemble_features(bench_collection(), FeatureSpec::variant("LinearCatRev"));
  for (auto _ : state) benchmark::DoNotOptimize(train_linear_interpolation(q));
}
BENCHMARK(BM_Interpolation)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
