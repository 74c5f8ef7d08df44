#pragma once

#include <span>
#include <vector>

#include "aucopt/types.hpp"

namespace aucopt {

/// How cross-class score ties count toward the AUC numerator: `strict` gives
/// them 0 (the optimization objective), `half` gives them 1/2 (Wilcoxon
/// convention, used for reporting).
enum class TiePolicy { strict, half };

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

/// Threshold-sweep ROC curve from (0,0) to (1,1), both coordinates
/// nondecreasing. Tied score values are collapsed into a single segment, so
/// the trapezoidal area equals the half-credit AUC.
struct RocCurve {
  std::vector<RocPoint> points;

  double trapezoid_area() const;
};

/// AUC from raw score arrays in O(n log n). Scores must be finite and both
/// sequences nonempty.
AucValue auc_from_scores(std::span<const double> pos_scores, std::span<const double> neg_scores,
                         TiePolicy policy);

RocCurve roc_points(std::span<const double> pos_scores, std::span<const double> neg_scores);

}  // namespace aucopt
