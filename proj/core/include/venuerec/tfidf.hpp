#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace venuerec {

/// Sparse vector with strictly increasing indices.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;

  bool empty() const noexcept { return entries.empty(); }
  double norm() const;
  double dot(std::span<const double> dense) const;
  std::size_t max_index_plus_one() const noexcept {
    return entries.empty() ? 0 : entries.back().first + 1;
  }

  bool operator==(const SparseVector&) const = default;
};

/// Arithmetic mean of sparse vectors (the zero vector for an empty input).
SparseVector mean_of(std::span<const SparseVector> vectors);

/// Term index with document frequencies. Indices are dense and assigned in
/// lexicographic term order, so they do not depend on document order.
class Vocabulary {
 public:
  Vocabulary() = default;

  static Vocabulary fit(std::span<const std::vector<std::string>> documents);

  std::size_t size() const noexcept { return terms_.size(); }
  std::size_t n_documents() const noexcept { return n_documents_; }
  std::optional<std::uint32_t> index_of(std::string_view term) const;
  const std::string& term(std::uint32_t index) const { return terms_[index]; }
  std::size_t document_frequency(std::uint32_t index) const { return df_[index]; }

  /// ln((1 + N) / (1 + df)) + 1
  double idf(std::uint32_t index) const { return idf_[index]; }

  /// Raw term counts times idf, L2-normalized. Out-of-vocabulary terms are
  /// ignored; an empty result is the zero vector.
  SparseVector transform(std::span<const std::string> tokens) const;

 private:
  std::vector<std::string> terms_;
  std::map<std::string, std::uint32_t, std::less<>> index_;
  std::vector<std::size_t> df_;
  std::vector<double> idf_;
  std::size_t n_documents_ = 0;
};

struct TfidfFit {
  Vocabulary vocabulary;
  std::vector<SparseVector> vectors;
};

TfidfFit fit_tfidf(std::span<const std::vector<std::string>> documents);

}  // namespace venuerec
