#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "aucopt/types.hpp"

namespace aucopt {

struct FitConfig {
  double learning_rate = 0.01;
  std::size_t epochs = 100;
  double l2_strength = 0.0;
  std::uint64_t seed = 0;
  /// Weight samples inversely to class frequency: n/(2 n+) per positive and
  /// n/(2 n-) per negative.
  bool balanced = false;
};

struct FittedModel {
  Direction direction;
  double bias = 0.0;
  /// Objective value at the start of each epoch; length equals epochs run.
  std::vector<double> training_loss_trace;
};

enum class PairwiseLoss { hinge, square };

/// Thrown when a fit produces a non-finite objective.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::size_t epoch)
      : std::runtime_error(what + " at epoch " + std::to_string(epoch)), epoch_(epoch) {}

  std::size_t epoch() const { return epoch_; }

 private:
  std::size_t epoch_;
};

/// Full-batch gradient descent on the L2-regularized (optionally
/// class-weighted) logistic loss, zero-initialized. Deterministic.
FittedModel fit_logistic(const Dataset& dataset, const FitConfig& config);

/// Stochastic descent over uniformly sampled positive-negative pairs with a
/// hinge or square surrogate on the score difference, n+ n- samples per
/// epoch. Deterministic given the seed. No bias term: pair differences cancel
/// it.
FittedModel fit_pairwise(const Dataset& dataset, PairwiseLoss loss, const FitConfig& config);

/// Full-batch objective and analytic gradient, the surface checked against
/// central finite differences.
struct LossGradient {
  double loss = 0.0;
  std::vector<double> grad_weights;
  double grad_bias = 0.0;
};

LossGradient logistic_loss_gradient(const Dataset& dataset, const FitConfig& config,
                                    std::span<const double> weights, double bias);
LossGradient pairwise_loss_gradient(const Dataset& dataset, PairwiseLoss loss, double l2_strength,
                                    std::span<const double> weights);

/// Class weights n/(2 n+), n/(2 n-) as (positive, negative).
std::pair<double, double> balanced_class_weights(const Dataset& dataset);

// 5-fold cross-validated grid search over learning rate {1e-1, 1e-2, 1e-3}
// and L2 strength {0, 1e-4, 1e-2, 1}, selected by mean validation strict AUC
// (grid order breaks ties), then refit on the full training data.
FittedModel fit_logistic_cv(const Dataset& dataset, bool balanced, std::uint64_t seed);
FittedModel fit_pairwise_cv(const Dataset& dataset, PairwiseLoss loss, std::uint64_t seed);

}  // namespace aucopt
