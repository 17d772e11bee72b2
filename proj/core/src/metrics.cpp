#include "venuerec/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "venuerec/error.hpp"

namespace venuerec {

namespace {

double discount(std::size_t position) {
  static const auto table = [] {
    std::array<double, kMaxRankedListLength + 2> t{};
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = 1.0 / std::log2(static_cast<double>(i) + 2.0);
    return t;
  }();
  return position < table.size() ? table[position]
                                 : 1.0 / std::log2(static_cast<double>(position) + 2.0);
}

}  // namespace

double gain(int rating) { return std::ldexp(1.0, rating) - 1.0; }

double dcg_at(std::span<const int> ratings_in_rank_order, std::size_t k) {
  double dcg = 0.0;
  const std::size_t n = std::min(k, ratings_in_rank_order.size());
  for (std::size_t i = 0; i < n; ++i) dcg += gain(ratings_in_rank_order[i]) * discount(i);
  return dcg;
}

double ideal_dcg_at(std::span<const int> pool, std::size_t k) {
  std::vector<int> best(pool.begin(), pool.end());
  const std::size_t n = std::min(k, best.size());
  std::partial_sort(best.begin(), best.begin() + static_cast<std::ptrdiff_t>(n), best.end(),
                    std::greater<>());
  return dcg_at(std::span<const int>(best).first(n), k);
}

std::vector<int> ratings_of(std::span<const std::string> ranked, const Judgments& judgments) {
  std::vector<int> out;
  out.reserve(ranked.size());
  for (const auto& id : ranked) {
    const auto it = judgments.find(id);
    out.push_back(it == judgments.end() ? 0 : it->second);
  }
  return out;
}

double precision_at_5(std::span<const std::string> ranked, const Judgments& judgments) {
  const auto ratings = ratings_of(ranked.first(std::min(kMetricCutoff, ranked.size())), judgments);
  const auto hits = std::count_if(ratings.begin(), ratings.end(),
                                  [](int r) { return r >= kRelevantRating; });
  return static_cast<double>(hits) / static_cast<double>(kMetricCutoff);
}

double ndcg_at_5(std::span<const std::string> ranked, const Judgments& judgments) {
  std::vector<int> pool;
  pool.reserve(judgments.size());
  for (const auto& [id, rating] : judgments) pool.push_back(rating);
  const double ideal = ideal_dcg_at(pool, kMetricCutoff);
  if (ideal <= 0.0) return 0.0;
  const auto ratings = ratings_of(ranked.first(std::min(kMetricCutoff, ranked.size())), judgments);
  return dcg_at(ratings, kMetricCutoff) / ideal;
}

double reciprocal_rank(std::span<const std::string> ranked, const Judgments& judgments) {
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto it = judgments.find(ranked[i]);
    if (it != judgments.end() && it->second >= kRelevantRating) {
      return 1.0 / static_cast<double>(i + 1);
    }
  }
  return 0.0;
}

double mrr(std::span<const std::vector<std::string>> ranked_lists,
           std::span<const Judgments> judgments) {
  if (ranked_lists.size() != judgments.size()) {
    throw ValidationError("eval", "mrr needs one judgment set per ranked list");
  }
  if (ranked_lists.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < ranked_lists.size(); ++i) {
    sum += reciprocal_rank(ranked_lists[i], judgments[i]);
  }
  return sum / static_cast<double>(ranked_lists.size());
}

std::vector<std::string> venue_ids(const RankedList& list) {
  std::vector<std::string> out;
  out.reserve(list.entries.size());
  for (const auto& e : list.entries) out.push_back(e.venue_id);
  return out;
}

}  // namespace venuerec
