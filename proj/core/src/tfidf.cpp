#include "venuerec/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace venuerec {

double SparseVector::norm() const {
  double s = 0.0;
  for (const auto& [i, w] : entries) s += w * w;
  return std::sqrt(s);
}

double SparseVector::dot(std::span<const double> dense) const {
  double s = 0.0;
  for (const auto& [i, w] : entries) {
    if (i < dense.size()) s += w * dense[i];
  }
  return s;
}

SparseVector mean_of(std::span<const SparseVector> vectors) {
  if (vectors.empty()) return {};
  std::map<std::uint32_t, double> sum;
  for (const auto& v : vectors) {
    for (const auto& [i, w] : v.entries) sum[i] += w;
  }
  SparseVector out;
  const double n = static_cast<double>(vectors.size());
  for (const auto& [i, w] : sum) {
    if (w != 0.0) out.entries.emplace_back(i, w / n);
  }
  return out;
}

Vocabulary Vocabulary::fit(std::span<const std::vector<std::string>> documents) {
  std::map<std::string, std::size_t, std::less<>> df;
  for (const auto& doc : documents) {
    const std::set<std::string_view> unique(doc.begin(), doc.end());
    for (const auto term : unique) {
      auto it = df.find(term);
      if (it == df.end()) {
        df.emplace(std::string(term), 1);
      } else {
        ++it->second;
      }
    }
  }
  Vocabulary v;
  v.n_documents_ = documents.size();
  const double n = static_cast<double>(documents.size());
  for (const auto& [term, count] : df) {
    const auto index = static_cast<std::uint32_t>(v.terms_.size());
    v.terms_.push_back(term);
    v.index_.emplace(term, index);
    v.df_.push_back(count);
    v.idf_.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  return v;
}

std::optional<std::uint32_t> Vocabulary::index_of(std::string_view term) const {
  const auto it = index_.find(term);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SparseVector Vocabulary::transform(std::span<const std::string> tokens) const {
  std::map<std::uint32_t, double> counts;
  for (const auto& token : tokens) {
    if (const auto index = index_of(token)) counts[*index] += 1.0;
  }
  SparseVector out;
  double norm2 = 0.0;
  for (const auto& [i, tf] : counts) {
    const double w = tf * idf_[i];
    out.entries.emplace_back(i, w);
    norm2 += w * w;
  }
  if (norm2 > 0.0) {
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& e : out.entries) e.second *= inv;
  }
  return out;
}

TfidfFit fit_tfidf(std::span<const std::vector<std::string>> documents) {
  TfidfFit fit{Vocabulary::fit(documents), {}};
  fit.vectors.reserve(documents.size());
  for (const auto& doc : documents) fit.vectors.push_back(fit.vocabulary.transform(doc));
  return fit;
}

}  // namespace venuerec
