#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "aucopt/types.hpp"

namespace aucopt {

/// Sign of a*b - c*d, exact for finite doubles. Compensated with fma so the
/// returned sign matches the real-arithmetic sign even when the products
/// nearly cancel.
int det_sign(double a, double b, double c, double d);

/// The critical slope of one positive-negative pair: the slope m at which the
/// pair swaps order under directions w = [m, 1]. Stored as a canonical
/// fraction (dy/dx with dx > 0) so equality and order are decided by exact
/// cross-multiplication, never by division.
struct SlopeEvent {
  double dx = 1.0;
  double dy = 0.0;
  std::uint32_t pos_index = 0;
  std::uint32_t neg_index = 0;
  /// +1 if the pair becomes satisfied when the sweep crosses this slope,
  /// -1 if it becomes unsatisfied. Equals the sign of the x1 difference.
  int step = 0;

  double slope_value() const { return dy / dx; }
};

/// a < b as real slope values (dy/dx), decided exactly.
bool slope_less(const SlopeEvent& a, const SlopeEvent& b);
bool slope_equal(const SlopeEvent& a, const SlopeEvent& b);

struct SlopeEnumeration {
  /// Events in ascending slope order; events with equal slope share a group.
  std::vector<std::vector<SlopeEvent>> groups;
  /// Coincident pairs (x+ == x-): no event, tied under every direction.
  std::uint64_t degenerate_pairs = 0;
  /// Pairs with equal first coordinate: order is constant across the sweep.
  std::uint64_t vertical_pairs = 0;
  std::uint64_t total_events = 0;
};

/// All critical slopes of a 2-dimensional dataset, grouped and sorted.
SlopeEnumeration enumerate_slope_events(const Dataset& dataset);

/// Result of an exact solve: the optimum AUC with a direction achieving it.
struct OptResult {
  AucValue auc;
  Direction direction;
  std::uint64_t events_processed = 0;
  std::uint64_t degenerate_pairs = 0;
  std::uint64_t candidates_evaluated = 0;
  double elapsed_seconds = 0.0;
};

/// Called after each slope group with the mid-cell direction of the cell just
/// entered and the exact satisfied-pair count there. Used to audit the sweep.
using SweepObserver =
    std::function<void(std::size_t group_index, const Direction& mid_cell_direction,
                       std::uint64_t satisfied_pairs)>;

/// Exact maximizer of the strict empirical AUC over all directions in R^2.
/// Enumerates the O(n+ n-) critical slopes, counts the initial cell
/// combinatorially, then sweeps in ascending order applying each slope
/// group's +-1 steps; direct and complement candidates are tracked in every
/// cell. Runs in O(n+ n- log(n+ n-)).
OptResult solve_2d(const Dataset& dataset, const SweepObserver& observer = {});

/// One direction the sweep considers, with its exact counts.
struct CellCandidate {
  std::uint64_t satisfied = 0;
  std::uint64_t tied = 0;
  Direction direction;
};

/// Every candidate solve_2d would examine, in sweep order: the initial cell
/// and its complement, the cell above each slope group with its complement,
/// and the axis directions. The maximum over the list is the exact optimum.
/// The recursive solver scans these when a single argmax direction is too
/// fragile to survive reduction roundoff.
std::vector<CellCandidate> enumerate_cell_candidates(const Dataset& dataset);

}  // namespace aucopt
