#include "aucopt/types.hpp"

#include <cmath>
#include <stdexcept>

namespace aucopt {

namespace {

std::size_t check_points(const std::vector<LabeledPoint>& points, int expected_label,
                         std::size_t dim) {
  for (const LabeledPoint& p : points) {
    if (p.label != expected_label) {
      throw std::invalid_argument("Dataset: point label does not match its class");
    }
    if (p.coords.empty()) {
      throw std::invalid_argument("Dataset: zero-dimensional point");
    }
    if (dim == 0) {
      dim = p.coords.size();
    } else if (p.coords.size() != dim) {
      throw std::invalid_argument("Dataset: inconsistent point dimensions");
    }
    for (double c : p.coords) {
      if (!std::isfinite(c)) {
        throw std::invalid_argument("Dataset: non-finite coordinate");
      }
    }
  }
  return dim;
}

}  // namespace

Dataset::Dataset(std::vector<LabeledPoint> positives, std::vector<LabeledPoint> negatives)
    : positives_(std::move(positives)), negatives_(std::move(negatives)) {
  std::size_t dim = check_points(positives_, +1, 0);
  dim = check_points(negatives_, -1, dim);
  dim_ = dim;
}

Dataset Dataset::from_points(std::vector<LabeledPoint> points) {
  std::vector<LabeledPoint> pos, neg;
  for (LabeledPoint& p : points) {
    if (p.label == +1) {
      pos.push_back(std::move(p));
    } else if (p.label == -1) {
      neg.push_back(std::move(p));
    } else {
      throw std::invalid_argument("Dataset: label must be +1 or -1");
    }
  }
  return Dataset(std::move(pos), std::move(neg));
}

void Dataset::require_both_classes(const char* op_name) const {
  if (positives_.empty() || negatives_.empty()) {
    throw std::invalid_argument(std::string(op_name) +
                                ": dataset needs at least one positive and one negative point");
  }
}

double Direction::score(std::span<const double> coords) const {
  double s = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    s += weights[k] * coords[k];
  }
  return s;
}

double Direction::norm() const {
  double s = 0.0;
  for (double w : weights) s += w * w;
  return std::sqrt(s);
}

Direction Direction::negated() const {
  Direction out = *this;
  for (double& w : out.weights) w = -w;
  return out;
}

void validate_direction(const Direction& direction) {
  if (direction.weights.empty()) {
    throw std::invalid_argument("Direction: empty weight vector");
  }
  bool any_nonzero = false;
  for (double w : direction.weights) {
    if (!std::isfinite(w)) {
      throw std::invalid_argument("Direction: non-finite weight");
    }
    if (w != 0.0) any_nonzero = true;
  }
  if (!any_nonzero) {
    throw std::invalid_argument("Direction: all weights are zero");
  }
}

std::string AucValue::fraction() const {
  return std::to_string(satisfied_pairs) + "/" + std::to_string(total_pairs);
}

AucValue make_strict_auc(std::uint64_t satisfied, std::uint64_t tied, std::uint64_t total) {
  AucValue v;
  v.satisfied_pairs = satisfied;
  v.tied_pairs = tied;
  v.total_pairs = total;
  v.value = static_cast<double>(satisfied) / static_cast<double>(total);
  return v;
}

}  // namespace aucopt
