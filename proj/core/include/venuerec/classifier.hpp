#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "venuerec/tfidf.hpp"

namespace venuerec {

/// A training example with label +1 or -1.
struct LabeledVector {
  SparseVector x;
  int label = 1;
};

struct SolverOptions {
  double C = 1.0;
  /// Stop once primal minus dual objective falls to this value.
  double tolerance = 1e-4;
  int max_passes = 1000;
  std::uint64_t seed = 1;
};

/// Per-pass objective values recorded by the solver.
struct TrainingTrace {
  /// Dual objective in minimization form; non-increasing across passes.
  std::vector<double> dual_objective;
  std::vector<double> primal_objective;
  int passes = 0;
  bool converged = false;
};

/// f(x) = w·x + b
struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;

  double decision(const SparseVector& x) const { return x.dot(weights) + bias; }
};

/// L2-regularized squared-hinge objective. The bias is handled as a weight
/// on a constant unit feature and is regularized with w:
///   ½(‖w‖² + b²) + C Σ max(0, 1 − yᵢ(w·xᵢ + b))²
double primal_objective(const LinearModel& model, std::span<const LabeledVector> samples,
                        double C);

/// Dual coordinate descent. Samples are first put in a canonical order
/// (label, then entries), then visited in a per-pass seeded shuffle, so the
/// result does not depend on the order of `samples`. Throws ValidationError
/// on non-finite feature values or labels other than ±1.
LinearModel train_linear_svm(std::span<const LabeledVector> samples, std::size_t dimension,
                             const SolverOptions& options = {}, TrainingTrace* trace = nullptr);

}  // namespace venuerec
