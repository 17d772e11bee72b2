#include "venuerec/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "venuerec/error.hpp"
#include "venuerec/random.hpp"

namespace venuerec {

namespace {

constexpr const char* kModule = "review-model";

double squared_norm(const LinearModel& m) {
  double s = m.bias * m.bias;
  for (const double w : m.weights) s += w * w;
  return s;
}

}  // namespace

double primal_objective(const LinearModel& model, std::span<const LabeledVector> samples,
                        double C) {
  double loss = 0.0;
  for (const auto& s : samples) {
    const double margin = 1.0 - s.label * model.decision(s.x);
    if (margin > 0.0) loss += margin * margin;
  }
  return 0.5 * squared_norm(model) + C * loss;
}

LinearModel train_linear_svm(std::span<const LabeledVector> samples, std::size_t dimension,
                             const SolverOptions& options, TrainingTrace* trace) {
  if (options.C <= 0.0) throw ConfigError(kModule, "C must be positive");
  for (const auto& s : samples) {
    if (s.label != 1 && s.label != -1) throw ValidationError(kModule, "labels must be +1 or -1");
    for (const auto& [i, w] : s.x.entries) {
      if (!std::isfinite(w)) throw ValidationError(kModule, "non-finite feature value");
      if (i >= dimension) throw ValidationError(kModule, "feature index beyond dimension");
    }
  }

  std::vector<std::size_t> canonical(samples.size());
  std::iota(canonical.begin(), canonical.end(), std::size_t{0});
  std::stable_sort(canonical.begin(), canonical.end(), [&](std::size_t a, std::size_t b) {
    if (samples[a].label != samples[b].label) return samples[a].label < samples[b].label;
    return samples[a].x.entries < samples[b].x.entries;
  });

  const std::size_t n = samples.size();
  const double diag = 0.5 / options.C;
  std::vector<double> qii(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& x = samples[canonical[k]].x;
    double s = 1.0;  // constant bias feature
    for (const auto& [i, w] : x.entries) s += w * w;
    qii[k] = s + diag;
  }

  LinearModel model{std::vector<double>(dimension, 0.0), 0.0};
  std::vector<double> alpha(n, 0.0);
  Rng rng(options.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  const auto dual_value = [&] {
    double sum_alpha = 0.0;
    double sum_alpha2 = 0.0;
    for (const double a : alpha) {
      sum_alpha += a;
      sum_alpha2 += a * a;
    }
    return 0.5 * squared_norm(model) + diag * 0.5 * sum_alpha2 - sum_alpha;
  };

  if (trace) *trace = TrainingTrace{};
  int pass = 0;
  bool converged = n == 0;
  while (!converged && pass < options.max_passes) {
    rng.shuffle(std::span<std::size_t>(order));
    for (const std::size_t k : order) {
      const auto& s = samples[canonical[k]];
      const double y = s.label;
      const double g = y * model.decision(s.x) - 1.0 + diag * alpha[k];
      const double pg = alpha[k] == 0.0 ? std::min(g, 0.0) : g;
      if (std::abs(pg) <= 1e-15) continue;
      const double updated = std::max(alpha[k] - g / qii[k], 0.0);
      const double delta = (updated - alpha[k]) * y;
      alpha[k] = updated;
      for (const auto& [i, w] : s.x.entries) model.weights[i] += delta * w;
      model.bias += delta;
    }
    ++pass;
    const double dual = dual_value();
    const double primal = primal_objective(model, samples, options.C);
    if (trace) {
      trace->dual_objective.push_back(dual);
      trace->primal_objective.push_back(primal);
    }
    // Weak duality: primal(w(α)) ≥ −dual(α) with equality at the optimum.
    converged = primal + dual <= options.tolerance;
  }
  if (trace) {
    trace->passes = pass;
    trace->converged = converged;
  }
  return model;
}

}  // namespace venuerec
