#pragma once

#include "aucopt/types.hpp"

namespace aucopt {

/// Strict empirical AUC of a direction: the exact count of positive-negative
/// pairs with w.x+ > w.x-. Ties contribute 0 to satisfied_pairs and are
/// reported in tied_pairs. O((n+ + n-) log(n+ + n-)) via score sorting.
///
/// Score comparisons are exact in the real-arithmetic sense over the double
/// inputs (expansion arithmetic up to dimension 8): two points whose scores
/// agree as real numbers count as tied even when naive summation would round
/// them apart.
AucValue evaluate_auc_direction(const Dataset& dataset, const Direction& direction);

/// Same count by the O(n+ n-) double loop. Kept as a cross-check for the
/// sorted path; the two must agree exactly on every input.
AucValue evaluate_auc_direction_naive(const Dataset& dataset, const Direction& direction);

}  // namespace aucopt
