#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace aucopt {

/// A point in R^d with a binary class label (+1 or -1).
struct LabeledPoint {
  std::vector<double> coords;
  int label = +1;
};

/// Labeled sample split into positive and negative classes. All points share
/// one dimension; coordinates are validated finite on construction.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<LabeledPoint> positives, std::vector<LabeledPoint> negatives);

  /// Splits a mixed point list by label. Labels must be +1 or -1.
  static Dataset from_points(std::vector<LabeledPoint> points);

  const std::vector<LabeledPoint>& positives() const { return positives_; }
  const std::vector<LabeledPoint>& negatives() const { return negatives_; }

  std::size_t dim() const { return dim_; }
  std::size_t num_pos() const { return positives_.size(); }
  std::size_t num_neg() const { return negatives_.size(); }
  std::size_t size() const { return positives_.size() + negatives_.size(); }
  std::uint64_t num_pairs() const {
    return static_cast<std::uint64_t>(num_pos()) * static_cast<std::uint64_t>(num_neg());
  }

  /// Throws std::invalid_argument unless both classes are nonempty.
  void require_both_classes(const char* op_name) const;

 private:
  std::vector<LabeledPoint> positives_;
  std::vector<LabeledPoint> negatives_;
  std::size_t dim_ = 0;
};

/// A linear scoring direction w; the score of x is the inner product w.x.
/// Must have at least one nonzero, finite component.
struct Direction {
  std::vector<double> weights;

  std::size_t dim() const { return weights.size(); }
  double score(std::span<const double> coords) const;
  double norm() const;
  Direction negated() const;
};

/// Validates finiteness and the not-all-zero invariant; throws std::invalid_argument.
void validate_direction(const Direction& direction);

/// Exact empirical AUC as integer pair counts. `value` is satisfied/total for
/// strict counting, or (satisfied + tied/2)/total when a producer applies
/// half-credit ties; either way it is a ratio of integers.
struct AucValue {
  std::uint64_t satisfied_pairs = 0;
  std::uint64_t tied_pairs = 0;
  std::uint64_t total_pairs = 1;
  double value = 0.0;

  /// "satisfied/total", e.g. "3/4".
  std::string fraction() const;
};

AucValue make_strict_auc(std::uint64_t satisfied, std::uint64_t tied, std::uint64_t total);

}  // namespace aucopt
