#include "aucopt/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "aucopt/evaluate.hpp"
#include "aucopt/rng.hpp"

namespace aucopt {

namespace {

// log(1 + exp(t)) without overflow.
double softplus(double t) { return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t))); }

// d softplus(t) / dt.
double sigmoid(double t) {
  if (t >= 0.0) {
    return 1.0 / (1.0 + std::exp(-t));
  }
  const double e = std::exp(t);
  return e / (1.0 + e);
}

void check_config(const FitConfig& config) {
  if (!(config.learning_rate > 0.0)) {
    throw std::invalid_argument("FitConfig: learning_rate must be positive");
  }
  if (config.epochs == 0) {
    throw std::invalid_argument("FitConfig: epochs must be at least 1");
  }
  if (config.l2_strength < 0.0) {
    throw std::invalid_argument("FitConfig: l2_strength must be nonnegative");
  }
}

}  // namespace

std::pair<double, double> balanced_class_weights(const Dataset& dataset) {
  const double n = static_cast<double>(dataset.size());
  return {n / (2.0 * static_cast<double>(dataset.num_pos())),
          n / (2.0 * static_cast<double>(dataset.num_neg()))};
}

LossGradient logistic_loss_gradient(const Dataset& dataset, const FitConfig& config,
                                    std::span<const double> weights, double bias) {
  const std::size_t d = dataset.dim();
  const double n = static_cast<double>(dataset.size());
  auto [w_pos, w_neg] = config.balanced ? balanced_class_weights(dataset)
                                        : std::pair<double, double>{1.0, 1.0};

  LossGradient out;
  out.grad_weights.assign(d, 0.0);

  auto accumulate = [&](const std::vector<LabeledPoint>& points, double y, double c) {
    for (const LabeledPoint& p : points) {
      double z = bias;
      for (std::size_t k = 0; k < d; ++k) z += weights[k] * p.coords[k];
      const double t = -y * z;
      out.loss += c * softplus(t);
      const double g = c * (-y) * sigmoid(t);
      for (std::size_t k = 0; k < d; ++k) out.grad_weights[k] += g * p.coords[k];
      out.grad_bias += g;
    }
  };
  accumulate(dataset.positives(), +1.0, w_pos);
  accumulate(dataset.negatives(), -1.0, w_neg);

  out.loss /= n;
  out.grad_bias /= n;
  double reg = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    out.grad_weights[k] = out.grad_weights[k] / n + config.l2_strength * weights[k];
    reg += weights[k] * weights[k];
  }
  out.loss += 0.5 * config.l2_strength * reg;
  return out;
}

LossGradient pairwise_loss_gradient(const Dataset& dataset, PairwiseLoss loss, double l2_strength,
                                    std::span<const double> weights) {
  dataset.require_both_classes("pairwise_loss_gradient");
  const std::size_t d = dataset.dim();
  const double pairs = static_cast<double>(dataset.num_pairs());

  LossGradient out;
  out.grad_weights.assign(d, 0.0);
  std::vector<double> delta(d);
  for (const LabeledPoint& p : dataset.positives()) {
    for (const LabeledPoint& q : dataset.negatives()) {
      double margin = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        delta[k] = p.coords[k] - q.coords[k];
        margin += weights[k] * delta[k];
      }
      if (loss == PairwiseLoss::hinge) {
        if (margin < 1.0) {
          out.loss += 1.0 - margin;
          for (std::size_t k = 0; k < d; ++k) out.grad_weights[k] -= delta[k];
        }
      } else {
        const double r = margin - 1.0;
        out.loss += r * r;
        for (std::size_t k = 0; k < d; ++k) out.grad_weights[k] += 2.0 * r * delta[k];
      }
    }
  }

  out.loss /= pairs;
  double reg = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    out.grad_weights[k] = out.grad_weights[k] / pairs + l2_strength * weights[k];
    reg += weights[k] * weights[k];
  }
  out.loss += 0.5 * l2_strength * reg;
  return out;
}

FittedModel fit_logistic(const Dataset& dataset, const FitConfig& config) {
  dataset.require_both_classes("fit_logistic");
  check_config(config);
  const std::size_t d = dataset.dim();

  FittedModel model;
  model.direction.weights.assign(d, 0.0);
  model.bias = 0.0;
  model.training_loss_trace.reserve(config.epochs);

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    LossGradient g = logistic_loss_gradient(dataset, config, model.direction.weights, model.bias);
    if (!std::isfinite(g.loss)) {
      throw DivergenceError("fit_logistic: non-finite loss", epoch);
    }
    model.training_loss_trace.push_back(g.loss);
    for (std::size_t k = 0; k < d; ++k) {
      model.direction.weights[k] -= config.learning_rate * g.grad_weights[k];
    }
    model.bias -= config.learning_rate * g.grad_bias;
  }

  const double final_loss =
      logistic_loss_gradient(dataset, config, model.direction.weights, model.bias).loss;
  if (!std::isfinite(final_loss)) {
    throw DivergenceError("fit_logistic: non-finite loss", config.epochs);
  }
  return model;
}

FittedModel fit_pairwise(const Dataset& dataset, PairwiseLoss loss, const FitConfig& config) {
  dataset.require_both_classes("fit_pairwise");
  check_config(config);
  const std::size_t d = dataset.dim();
  const std::size_t steps_per_epoch = dataset.num_pos() * dataset.num_neg();

  Rng rng(config.seed);
  FittedModel model;
  model.direction.weights.assign(d, 0.0);
  model.training_loss_trace.reserve(config.epochs);
  std::vector<double>& w = model.direction.weights;

  const auto& pos = dataset.positives();
  const auto& neg = dataset.negatives();
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    const double full_loss =
        pairwise_loss_gradient(dataset, loss, config.l2_strength, w).loss;
    if (!std::isfinite(full_loss)) {
      throw DivergenceError("fit_pairwise: non-finite loss", epoch);
    }
    model.training_loss_trace.push_back(full_loss);

    for (std::size_t s = 0; s < steps_per_epoch; ++s) {
      const LabeledPoint& p = pos[rng.below(pos.size())];
      const LabeledPoint& q = neg[rng.below(neg.size())];
      double margin = 0.0;
      for (std::size_t k = 0; k < d; ++k) margin += w[k] * (p.coords[k] - q.coords[k]);

      double factor = 0.0;  // d loss / d margin
      if (loss == PairwiseLoss::hinge) {
        if (margin < 1.0) factor = -1.0;
      } else {
        factor = 2.0 * (margin - 1.0);
      }
      for (std::size_t k = 0; k < d; ++k) {
        const double grad = factor * (p.coords[k] - q.coords[k]) + config.l2_strength * w[k];
        w[k] -= config.learning_rate * grad;
      }
    }
  }

  const double final_loss = pairwise_loss_gradient(dataset, loss, config.l2_strength, w).loss;
  if (!std::isfinite(final_loss)) {
    throw DivergenceError("fit_pairwise: non-finite loss", config.epochs);
  }
  return model;
}

namespace {

constexpr double kGridLearningRates[] = {1e-1, 1e-2, 1e-3};
constexpr double kGridL2[] = {0.0, 1e-4, 1e-2, 1.0};
constexpr std::size_t kFolds = 5;

// Stratified round-robin fold assignment after a seeded shuffle of each class.
std::pair<Dataset, Dataset> fold_split(const Dataset& dataset, std::size_t fold,
                                       std::uint64_t seed) {
  std::vector<LabeledPoint> fit_points, val_points;
  auto assign = [&](const std::vector<LabeledPoint>& points, std::uint64_t stream) {
    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(derive_seed(seed, stream));
    rng.shuffle(order);
    for (std::size_t i = 0; i < order.size(); ++i) {
      (i % kFolds == fold ? val_points : fit_points).push_back(points[order[i]]);
    }
  };
  assign(dataset.positives(), 0);
  assign(dataset.negatives(), 1);
  return {Dataset::from_points(std::move(fit_points)), Dataset::from_points(std::move(val_points))};
}

template <typename FitFn>
FittedModel grid_search(const Dataset& dataset, std::uint64_t seed, const FitFn& fit) {
  double best_lr = kGridLearningRates[0];
  double best_l2 = kGridL2[0];
  double best_score = -1.0;

  for (double lr : kGridLearningRates) {
    for (double l2 : kGridL2) {
      double score_sum = 0.0;
      std::size_t folds_used = 0;
      for (std::size_t fold = 0; fold < kFolds; ++fold) {
        auto [fit_set, val_set] = fold_split(dataset, fold, seed);
        if (fit_set.num_pos() == 0 || fit_set.num_neg() == 0 || val_set.num_pos() == 0 ||
            val_set.num_neg() == 0) {
          continue;
        }
        try {
          const FittedModel model = fit(fit_set, lr, l2, derive_seed(seed, 100 + fold));
          score_sum += evaluate_auc_direction(val_set, model.direction).value;
          ++folds_used;
        } catch (const DivergenceError&) {
          // Diverging grid cells score zero on this fold.
          ++folds_used;
        }
      }
      if (folds_used == 0) continue;
      const double mean_score = score_sum / static_cast<double>(folds_used);
      if (mean_score > best_score) {
        best_score = mean_score;
        best_lr = lr;
        best_l2 = l2;
      }
    }
  }
  return fit(dataset, best_lr, best_l2, derive_seed(seed, 999));
}

}  // namespace

FittedModel fit_logistic_cv(const Dataset& dataset, bool balanced, std::uint64_t seed) {
  return grid_search(dataset, seed, [balanced](const Dataset& data, double lr, double l2,
                                               std::uint64_t fit_seed) {
    FitConfig config;
    config.learning_rate = lr;
    config.l2_strength = l2;
    config.seed = fit_seed;
    config.balanced = balanced;
    return fit_logistic(data, config);
  });
}

FittedModel fit_pairwise_cv(const Dataset& dataset, PairwiseLoss loss, std::uint64_t seed) {
  return grid_search(dataset, seed, [loss](const Dataset& data, double lr, double l2,
                                           std::uint64_t fit_seed) {
    FitConfig config;
    config.learning_rate = lr;
    config.l2_strength = l2;
    config.seed = fit_seed;
    return fit_pairwise(data, loss, config);
  });
}

}  // namespace aucopt
