#include "venuerec/review_model.hpp"

#include <ostream>

#include "venuerec/collection.hpp"
#include "venuerec/text.hpp"

namespace venuerec {

std::vector<LabeledReview> assemble_training_set(const UserHistory& user,
                                                 const Collection& collection) {
  std::vector<LabeledReview> out;
  for (const auto& rated : user.rated_venues) {
    const Venue& venue = collection.venue(rated.venue_id);
    const Polarity venue_polarity = polarity_of_user_rating(rated.rating);
    if (venue_polarity == Polarity::neutral) continue;
    for (const auto& review : venue.reviews) {
      if (polarity_of_review_rating(review.rating) != venue_polarity) continue;
      out.push_back({venue.id, review.text, venue_polarity == Polarity::positive ? 1 : -1});
    }
  }
  return out;
}

ReviewClassifier train_review_classifier(std::span<const LabeledReview> samples,
                                         const SolverOptions& options) {
  ReviewClassifier classifier;
  for (const auto& s : samples) {
    (s.label > 0 ? classifier.n_positive : classifier.n_negative) += 1;
  }
  if (classifier.n_positive == 0 || classifier.n_negative == 0) return classifier;

  std::vector<std::vector<std::string>> docs;
  docs.reserve(samples.size());
  for (const auto& s : samples) docs.push_back(tokenize(s.text));
  TfidfFit fit = fit_tfidf(docs);

  std::vector<LabeledVector> labeled;
  labeled.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    labeled.push_back({std::move(fit.vectors[i]), samples[i].label});
  }
  classifier.model = train_linear_svm(labeled, fit.vocabulary.size(), options);
  classifier.vocabulary = std::move(fit.vocabulary);
  classifier.degenerate = false;
  return classifier;
}

ReviewClassifier train_review_classifier(const UserHistory& user, const Collection& collection,
                                         const SolverOptions& options) {
  const auto samples = assemble_training_set(user, collection);
  return train_review_classifier(samples, options);
}

ReviewScore review_score(const ReviewClassifier& classifier, const Venue& venue) {
  if (venue.reviews.empty()) return {0.0, true};
  if (classifier.degenerate) return {0.0, false};
  std::vector<SparseVector> vectors;
  vectors.reserve(venue.reviews.size());
  for (const auto& review : venue.reviews) {
    vectors.push_back(classifier.vocabulary.transform(tokenize(review.text)));
  }
  return {classifier.model.decision(mean_of(vectors)), false};
}

void dump_classifier(std::ostream& out, const ReviewClassifier& classifier) {
  for (std::uint32_t i = 0; i < classifier.vocabulary.size(); ++i) {
    out << classifier.vocabulary.term(i) << ' ' << format_score(classifier.model.weights[i])
        << '\n';
  }
  out << "bias " << format_score(classifier.degenerate ? 0.0 : classifier.model.bias) << '\n';
}

}  // namespace venuerec
