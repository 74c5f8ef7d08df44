#include "aucopt/oracles.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "aucopt/evaluate.hpp"
#include "aucopt/rng.hpp"

namespace aucopt {

namespace {

class BestTracker {
 public:
  explicit BestTracker(const Dataset& dataset) : dataset_(dataset) {}

  /// Evaluates and folds into the running maximum; returns the pair count.
  /// Zero-norm and non-finite directions are skipped and count as 0.
  std::uint64_t consider(const Direction& dir) {
    double norm_sq = 0.0;
    for (double w : dir.weights) norm_sq += w * w;
    if (!(norm_sq > 0.0) || !std::isfinite(norm_sq)) return 0;
    ++evaluated_;
    const AucValue v = evaluate_auc_direction(dataset_, dir);
    if (!valid_ || v.satisfied_pairs > best_.satisfied_pairs) {
      best_ = v;
      best_dir_ = dir;
      valid_ = true;
    }
    return v.satisfied_pairs;
  }

  bool valid() const { return valid_; }
  const AucValue& best() const { return best_; }
  const Direction& best_direction() const { return best_dir_; }
  std::uint64_t evaluated() const { return evaluated_; }

 private:
  const Dataset& dataset_;
  bool valid_ = false;
  AucValue best_;
  Direction best_dir_;
  std::uint64_t evaluated_ = 0;
};

OptResult finish(BestTracker& tracker, std::uint64_t degenerate,
                 std::chrono::steady_clock::time_point t0) {
  OptResult result;
  result.auc = tracker.best();
  result.direction = tracker.best_direction();
  result.degenerate_pairs = degenerate;
  result.candidates_evaluated = tracker.evaluated();
  result.events_processed = tracker.evaluated();
  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm3(const std::array<double, 3>& a) {
  return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

}  // namespace

OptResult brute_force_2d(const Dataset& dataset) {
  const auto t0 = std::chrono::steady_clock::now();
  dataset.require_both_classes("brute_force_2d");
  if (dataset.dim() != 2) {
    throw std::invalid_argument("brute_force_2d: dataset dimension must be 2");
  }

  std::vector<double> slopes;
  std::uint64_t degenerate = 0;
  for (const LabeledPoint& p : dataset.positives()) {
    for (const LabeledPoint& q : dataset.negatives()) {
      const double d1 = p.coords[0] - q.coords[0];
      const double d2 = p.coords[1] - q.coords[1];
      if (d1 == 0.0 && d2 == 0.0) {
        ++degenerate;
      } else if (d1 != 0.0) {
        slopes.push_back(-d2 / d1);
      }
    }
  }
  std::sort(slopes.begin(), slopes.end());
  slopes.erase(std::unique(slopes.begin(), slopes.end()), slopes.end());

  BestTracker tracker(dataset);
  if (!slopes.empty()) {
    std::vector<double> cells;
    cells.reserve(slopes.size() + 1);
    cells.push_back(slopes.front() - 1.0);
    for (std::size_t k = 0; k + 1 < slopes.size(); ++k) {
      cells.push_back(0.5 * (slopes[k] + slopes[k + 1]));
    }
    cells.push_back(slopes.back() + 1.0);
    for (double m : cells) {
      tracker.consider(Direction{{m, 1.0}});
      tracker.consider(Direction{{-m, -1.0}});
    }
  }
  tracker.consider(Direction{{0.0, 1.0}});
  tracker.consider(Direction{{0.0, -1.0}});
  tracker.consider(Direction{{1.0, 0.0}});
  tracker.consider(Direction{{-1.0, 0.0}});

  return finish(tracker, degenerate, t0);
}

OptResult sample_directions_oracle(const Dataset& dataset, std::size_t num_samples,
                                   std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  dataset.require_both_classes("sample_directions_oracle");
  if (num_samples == 0) {
    throw std::invalid_argument("sample_directions_oracle: num_samples must be positive");
  }

  Rng rng(seed);
  BestTracker tracker(dataset);
  for (std::size_t k = 0; k < num_samples; ++k) {
    tracker.consider(Direction{rng.unit_vector(dataset.dim())});
  }
  return finish(tracker, 0, t0);
}

OptResult vertex_oracle_3d(const Dataset& dataset, std::uint64_t max_pairs) {
  const auto t0 = std::chrono::steady_clock::now();
  dataset.require_both_classes("vertex_oracle_3d");
  if (dataset.dim() != 3) {
    throw std::invalid_argument("vertex_oracle_3d: dataset dimension must be 3");
  }
  if (dataset.num_pairs() > max_pairs) {
    throw std::invalid_argument("vertex_oracle_3d: instance exceeds the size guard of " +
                                std::to_string(max_pairs) + " pairs");
  }

  std::vector<std::array<double, 3>> diffs;
  std::uint64_t degenerate = 0;
  for (const LabeledPoint& p : dataset.positives()) {
    for (const LabeledPoint& q : dataset.negatives()) {
      std::array<double, 3> u{p.coords[0] - q.coords[0], p.coords[1] - q.coords[1],
                              p.coords[2] - q.coords[2]};
      if (u[0] == 0.0 && u[1] == 0.0 && u[2] == 0.0) {
        ++degenerate;
      } else {
        diffs.push_back(u);
      }
    }
  }

  BestTracker tracker(dataset);

  auto dot3 = [](const std::array<double, 3>& x, const std::array<double, 3>& y) {
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
  };

  // Probes base + delta*(alpha*va + beta*vb) for all eight sign combinations.
  // The step is sized per combination from the dot products with every
  // difference vector: small enough that no strictly separated difference
  // changes side, large enough to dominate the roundoff of differences the
  // base ray is (numerically) orthogonal to. That window is exactly where the
  // probe lands in the cone with the requested sign pattern.
  auto probe_frame = [&](const std::array<double, 3>& base, const std::array<double, 3>& va,
                         const std::array<double, 3>& vb) {
    const double base_norm = norm3(base);
    if (!(base_norm > 0.0)) return;
    tracker.consider(Direction{{base[0], base[1], base[2]}});

    std::vector<double> base_dot(diffs.size()), va_dot(diffs.size()), vb_dot(diffs.size());
    std::vector<double> diff_norm(diffs.size());
    for (std::size_t t = 0; t < diffs.size(); ++t) {
      base_dot[t] = dot3(base, diffs[t]);
      va_dot[t] = dot3(va, diffs[t]);
      vb_dot[t] = dot3(vb, diffs[t]);
      diff_norm[t] = norm3(diffs[t]);
    }

    for (int alpha = -1; alpha <= 1; ++alpha) {
      for (int beta = -1; beta <= 1; ++beta) {
        if (alpha == 0 && beta == 0) continue;
        double ceiling = std::numeric_limits<double>::infinity();
        double floor = 0.0;
        for (std::size_t t = 0; t < diffs.size(); ++t) {
          const double p = base_dot[t];
          const double q = alpha * va_dot[t] + beta * vb_dot[t];
          if (std::abs(p) > 1e-12 * base_norm * diff_norm[t]) {
            if (q != 0.0) ceiling = std::min(ceiling, std::abs(p) / std::abs(q));
          } else if (q != 0.0) {
            floor = std::max(floor, std::abs(p) / std::abs(q));
          }
        }
        const double z_norm = norm3({alpha * va[0] + beta * vb[0], alpha * va[1] + beta * vb[1],
                                     alpha * va[2] + beta * vb[2]});
        if (!(z_norm > 0.0)) continue;
        if (!std::isfinite(ceiling)) ceiling = base_norm / z_norm;
        double delta = std::sqrt(std::max(floor, ceiling * 0x1.0p-40) * ceiling);
        if (!(delta > 0.0) || delta >= ceiling) delta = 0.5 * ceiling;
        tracker.consider(Direction{{base[0] + delta * (alpha * va[0] + beta * vb[0]),
                                    base[1] + delta * (alpha * va[1] + beta * vb[1]),
                                    base[2] + delta * (alpha * va[2] + beta * vb[2])}});
      }
    }
  };

  // Arrangement vertices: rays orthogonal to two independent differences.
  // Both ray signs matter; a cone may touch only the negated cross product.
  // The span vectors are normalized: with unit lengths every one of the four
  // sign patterns around the ray is reachable from the combination grid,
  // which is not true for lengths of very different size.
  for (std::size_t a = 0; a < diffs.size(); ++a) {
    for (std::size_t b = a + 1; b < diffs.size(); ++b) {
      const std::array<double, 3> w0 = cross(diffs[a], diffs[b]);
      const double w0_norm = norm3(w0);
      const double na = norm3(diffs[a]);
      const double nb = norm3(diffs[b]);
      if (!(w0_norm > 1e-12 * na * nb)) continue;  // parallel pair
      const std::array<double, 3> ua{diffs[a][0] / na, diffs[a][1] / na, diffs[a][2] / na};
      const std::array<double, 3> ub{diffs[b][0] / nb, diffs[b][1] / nb, diffs[b][2] / nb};
      probe_frame(w0, ua, ub);
      probe_frame({-w0[0], -w0[1], -w0[2]}, ua, ub);
    }
  }

  // Single differences: +-u nudged within an orthogonal frame, which covers
  // rank-deficient arrangements where no independent pair exists.
  for (const auto& u : diffs) {
    std::array<double, 3> axis{0.0, 0.0, 0.0};
    const std::array<double, 3> abs_u{std::abs(u[0]), std::abs(u[1]), std::abs(u[2])};
    if (abs_u[0] <= abs_u[1] && abs_u[0] <= abs_u[2]) {
      axis[0] = 1.0;
    } else if (abs_u[1] <= abs_u[2]) {
      axis[1] = 1.0;
    } else {
      axis[2] = 1.0;
    }
    std::array<double, 3> f1 = cross(u, axis);
    const double f1_norm = norm3(f1);
    for (double& x : f1) x /= f1_norm;
    std::array<double, 3> f2 = cross(u, f1);
    const double f2_norm = norm3(f2);
    for (double& x : f2) x /= f2_norm;

    probe_frame(u, f1, f2);
    probe_frame({-u[0], -u[1], -u[2]}, f1, f2);
  }

  if (!tracker.valid()) {
    // Every pair coincident: any direction ties everything.
    tracker.consider(Direction{{0.0, 0.0, 1.0}});
  }
  return finish(tracker, degenerate, t0);
}

}  // namespace aucopt
