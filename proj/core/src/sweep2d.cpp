#include "aucopt/sweep2d.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "aucopt/evaluate.hpp"

namespace aucopt {

int det_sign(double a, double b, double c, double d) {
  const double w = c * d;
  const double e = std::fma(c, d, -w);  // exact rounding error of w
  const double f = std::fma(a, b, -w);
  const double r = f - e;
  return (r > 0.0) - (r < 0.0);
}

bool slope_less(const SlopeEvent& a, const SlopeEvent& b) {
  // dy_a/dx_a < dy_b/dx_b with dx > 0 on both sides.
  return det_sign(a.dy, b.dx, b.dy, a.dx) < 0;
}

bool slope_equal(const SlopeEvent& a, const SlopeEvent& b) {
  return det_sign(a.dy, b.dx, b.dy, a.dx) == 0;
}

SlopeEnumeration enumerate_slope_events(const Dataset& dataset) {
  dataset.require_both_classes("enumerate_slope_events");
  if (dataset.dim() != 2) {
    throw std::invalid_argument("enumerate_slope_events: dataset dimension must be 2");
  }

  SlopeEnumeration out;
  std::vector<SlopeEvent> events;
  events.reserve(dataset.num_pairs());

  const auto& pos = dataset.positives();
  const auto& neg = dataset.negatives();
  for (std::uint32_t i = 0; i < pos.size(); ++i) {
    for (std::uint32_t j = 0; j < neg.size(); ++j) {
      const double d1 = pos[i].coords[0] - neg[j].coords[0];
      const double d2 = pos[i].coords[1] - neg[j].coords[1];
      if (d1 == 0.0 && d2 == 0.0) {
        ++out.degenerate_pairs;
        continue;
      }
      if (d1 == 0.0) {
        ++out.vertical_pairs;
        continue;
      }
      // Critical slope m = -d2/d1, canonicalized so dx > 0. The pair is
      // satisfied for m above (d1 > 0) or below (d1 < 0) the critical slope.
      SlopeEvent e;
      if (d1 > 0.0) {
        e.dx = d1;
        e.dy = -d2;
        e.step = +1;
      } else {
        e.dx = -d1;
        e.dy = d2;
        e.step = -1;
      }
      e.pos_index = i;
      e.neg_index = j;
      events.push_back(e);
    }
  }

  std::sort(events.begin(), events.end(), slope_less);
  out.total_events = events.size();

  for (std::size_t k = 0; k < events.size();) {
    std::size_t end = k + 1;
    while (end < events.size() && slope_equal(events[k], events[end])) ++end;
    out.groups.emplace_back(events.begin() + k, events.begin() + end);
    k = end;
  }
  return out;
}

namespace {

// Core of the sweep: emits every candidate (satisfied, tied, direction) in a
// fixed order. solve_2d keeps the running maximum; the recursive solver
// materializes the list.
template <typename Emit>
void for_each_candidate(const Dataset& dataset, const SlopeEnumeration& events,
                        const SweepObserver& observer, const Emit& emit) {
  const std::uint64_t total = dataset.num_pairs();
  const std::uint64_t degenerate = events.degenerate_pairs;

  // Satisfied count in the leftmost cell (m below every critical slope):
  // pairs ordered by a descending score swap (step -1) plus vertical pairs
  // with positive second-coordinate difference. Exact integer arithmetic.
  std::uint64_t initial = 0;
  for (const auto& group : events.groups) {
    for (const SlopeEvent& e : group) {
      if (e.step < 0) ++initial;
    }
  }
  for (const LabeledPoint& p : dataset.positives()) {
    for (const LabeledPoint& q : dataset.negatives()) {
      if (p.coords[0] == q.coords[0] && p.coords[1] > q.coords[1]) ++initial;
    }
  }

  // Inside any open cell the only tied pairs are coincident ones, so the
  // reversed direction satisfies exactly the remaining pairs.
  auto emit_cell = [&](std::uint64_t satisfied, double slope) {
    Direction dir{{slope, 1.0}};
    Direction flipped = dir.negated();
    emit(satisfied, degenerate, std::move(dir));
    emit(total - satisfied - degenerate, degenerate, std::move(flipped));
  };
  auto emit_evaluated = [&](Direction dir) {
    const AucValue v = evaluate_auc_direction(dataset, dir);
    emit(v.satisfied_pairs, v.tied_pairs, std::move(dir));
  };

  if (events.groups.empty()) {
    // Every pair is vertical or coincident; no finite critical slope exists.
    emit_evaluated(Direction{{0.0, 1.0}});
    emit_evaluated(Direction{{0.0, -1.0}});
    emit_evaluated(Direction{{1.0, 0.0}});
    emit_evaluated(Direction{{-1.0, 0.0}});
  } else {
    const double min_slope = events.groups.front().front().slope_value();
    emit_cell(initial, min_slope - 1.0);

    std::uint64_t current = initial;
    for (std::size_t g = 0; g < events.groups.size(); ++g) {
      // Apply the whole equal-slope group before comparing, so collinear
      // data cannot be evaluated half-way through a boundary.
      for (const SlopeEvent& e : events.groups[g]) {
        if (e.step > 0) {
          ++current;
        } else {
          assert(current > 0);
          --current;
        }
      }
      const double here = events.groups[g].front().slope_value();
      const double mid = g + 1 < events.groups.size()
                             ? 0.5 * (here + events.groups[g + 1].front().slope_value())
                             : here + 1.0;
      emit_cell(current, mid);
      if (observer) {
        observer(g, Direction{{mid, 1.0}}, current);
      }
    }

    // Never strictly better than the outermost cells, evaluated anyway.
    emit_evaluated(Direction{{1.0, 0.0}});
    emit_evaluated(Direction{{-1.0, 0.0}});
  }
}

}  // namespace

OptResult solve_2d(const Dataset& dataset, const SweepObserver& observer) {
  const auto t0 = std::chrono::steady_clock::now();
  dataset.require_both_classes("solve_2d");
  if (dataset.dim() != 2) {
    throw std::invalid_argument("solve_2d: dataset dimension must be 2");
  }

  const SlopeEnumeration events = enumerate_slope_events(dataset);

  bool have_best = false;
  CellCandidate best;
  std::uint64_t candidates = 0;
  for_each_candidate(dataset, events, observer,
                     [&](std::uint64_t satisfied, std::uint64_t tied, Direction dir) {
                       ++candidates;
                       if (!have_best || satisfied > best.satisfied) {
                         best = CellCandidate{satisfied, tied, std::move(dir)};
                         have_best = true;
                       }
                     });

  OptResult result;
  result.auc = make_strict_auc(best.satisfied, best.tied, dataset.num_pairs());
  result.direction = std::move(best.direction);
  result.events_processed = events.total_events;
  result.degenerate_pairs = events.degenerate_pairs;
  result.candidates_evaluated = candidates;
  result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

std::vector<CellCandidate> enumerate_cell_candidates(const Dataset& dataset) {
  dataset.require_both_classes("enumerate_cell_candidates");
  if (dataset.dim() != 2) {
    throw std::invalid_argument("enumerate_cell_candidates: dataset dimension must be 2");
  }
  const SlopeEnumeration events = enumerate_slope_events(dataset);
  std::vector<CellCandidate> cells;
  cells.reserve(2 * events.groups.size() + 4);
  for_each_candidate(dataset, events, {},
                     [&](std::uint64_t satisfied, std::uint64_t tied, Direction dir) {
                       cells.push_back(CellCandidate{satisfied, tied, std::move(dir)});
                     });
  return cells;
}

}  // namespace aucopt
