#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "venuerec/classifier.hpp"
#include "venuerec/collection.hpp"
#include "venuerec/tfidf.hpp"

namespace venuerec {

struct LabeledReview {
  std::string venue_id;
  std::string text;
  int label = 1;  // +1 for the liked class, -1 for the disliked class
};

/// Positive-star reviews of venues the user liked form the positive class;
/// negative-star reviews of disliked venues form the negative class. Mixed
/// combinations, neutral reviews, and neutral venues are dropped.
std::vector<LabeledReview> assemble_training_set(const UserHistory& user,
                                                 const Collection& collection);

/// Per-user linear model over a TF-IDF vocabulary. A degenerate classifier
/// (one or both classes empty) always scores 0.
struct ReviewClassifier {
  Vocabulary vocabulary;
  LinearModel model;
  bool degenerate = true;
  std::size_t n_positive = 0;
  std::size_t n_negative = 0;
};

ReviewClassifier train_review_classifier(std::span<const LabeledReview> samples,
                                         const SolverOptions& options = {});

ReviewClassifier train_review_classifier(const UserHistory& user, const Collection& collection,
                                         const SolverOptions& options = {});

struct ReviewScore {
  double value = 0.0;
  /// Set when the venue has no reviews.
  bool no_evidence = false;
};

/// w·x + b with x the mean of the venue's per-review TF-IDF vectors.
ReviewScore review_score(const ReviewClassifier& classifier, const Venue& venue);

/// "term weight" lines in vocabulary order followed by a "bias b" line.
void dump_classifier(std::ostream& out, const ReviewClassifier& classifier);

}  // namespace venuerec
