#pragma once

#include <span>
#include <string>
#include <vector>

#include "venuerec/collection.hpp"

namespace venuerec {

/// Binary relevance threshold on the 0..4 scale for P@5 and MRR.
inline constexpr int kRelevantRating = 3;
inline constexpr std::size_t kMetricCutoff = 5;

/// Exponential gain 2^rel − 1.
double gain(int rating);

/// Σ_{i<k} gain(rel_i) / log2(i + 2) over the first k entries.
double dcg_at(std::span<const int> ratings_in_rank_order, std::size_t k);

/// DCG@k of the best ordering of `pool`.
double ideal_dcg_at(std::span<const int> pool, std::size_t k);

/// Ratings for a ranked list; unjudged venues count as 0.
std::vector<int> ratings_of(std::span<const std::string> ranked, const Judgments& judgments);

/// Fraction of the top five with rating >= 3; short lists are padded with
/// non-relevant entries.
double precision_at_5(std::span<const std::string> ranked, const Judgments& judgments);

/// DCG@5 normalized by the ideal DCG@5 over every judged candidate of the
/// user. 0 when the ideal is 0.
double ndcg_at_5(std::span<const std::string> ranked, const Judgments& judgments);

/// 1 / rank of the first entry with rating >= 3, or 0 when there is none.
double reciprocal_rank(std::span<const std::string> ranked, const Judgments& judgments);

/// Mean reciprocal rank over users; lists[i] is judged by judgments[i].
double mrr(std::span<const std::vector<std::string>> ranked_lists,
           std::span<const Judgments> judgments);

std::vector<std::string> venue_ids(const RankedList& list);

}  // namespace venuerec
