#include "aucopt/evaluate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace aucopt {

namespace {

void check_inputs(const Dataset& dataset, const Direction& direction, const char* op) {
  dataset.require_both_classes(op);
  validate_direction(direction);
  if (direction.dim() != dataset.dim()) {
    throw std::invalid_argument(std::string(op) + ": direction dimension " +
                                std::to_string(direction.dim()) + " does not match dataset dimension " +
                                std::to_string(dataset.dim()));
  }
}

// Strict counting compares scores exactly, in the real-arithmetic sense over
// the double inputs: two scores that agree as real numbers must compare equal
// even when their floating-point sums round differently. Scores are kept as
// nonoverlapping expansions (Shewchuk style) up to dimension 8, with a
// rounded value plus error bound for the cheap path. Above dimension 8 the
// expansion buffer is skipped and plain rounded comparison applies.
constexpr std::size_t kMaxExactDim = 8;

void two_sum(double a, double b, double& sum, double& err) {
  sum = a + b;
  const double bv = sum - a;
  err = (a - (sum - bv)) + (b - bv);
}

struct Score {
  double approx = 0.0;
  double bound = 0.0;
  std::array<double, 2 * kMaxExactDim> comps{};
  int count = -1;  // -1: no expansion, compare by approx only
};

Score score_point(const Direction& w, std::span<const double> coords) {
  Score out;
  const std::size_t d = w.dim();
  double abs_sum = 0.0;
  const bool exact = d <= kMaxExactDim;
  if (exact) out.count = 0;

  auto grow = [&](double term) {
    double q = term;
    for (int i = 0; i < out.count; ++i) {
      double s, err;
      two_sum(q, out.comps[i], s, err);
      out.comps[i] = err;
      q = s;
    }
    out.comps[out.count++] = q;
  };

  for (std::size_t k = 0; k < d; ++k) {
    const double p = w.weights[k] * coords[k];
    out.approx += p;
    abs_sum += std::abs(p);
    if (exact) {
      const double err = std::fma(w.weights[k], coords[k], -p);
      if (err != 0.0) grow(err);
      grow(p);
    }
  }
  out.bound = static_cast<double>(d + 1) * std::numeric_limits<double>::epsilon() * abs_sum;
  return out;
}

// Sign of a - b, exact whenever both carry expansions.
int compare_scores(const Score& a, const Score& b) {
  if (a.approx - b.approx > a.bound + b.bound) return 1;
  if (b.approx - a.approx > a.bound + b.bound) return -1;
  if (a.count < 0 || b.count < 0) {
    return (a.approx > b.approx) - (a.approx < b.approx);
  }
  std::array<double, 4 * kMaxExactDim> diff{};
  int count = 0;
  auto grow = [&](double term) {
    double q = term;
    for (int i = 0; i < count; ++i) {
      double s, err;
      two_sum(q, diff[i], s, err);
      diff[i] = err;
      q = s;
    }
    diff[count++] = q;
  };
  for (int i = 0; i < a.count; ++i) grow(a.comps[i]);
  for (int i = 0; i < b.count; ++i) grow(-b.comps[i]);
  // Nonoverlapping components in increasing magnitude: the top nonzero one
  // carries the sign.
  for (int i = count - 1; i >= 0; --i) {
    if (diff[i] != 0.0) return diff[i] > 0.0 ? 1 : -1;
  }
  return 0;
}

std::vector<Score> score_points(const std::vector<LabeledPoint>& points, const Direction& w) {
  std::vector<Score> out;
  out.reserve(points.size());
  for (const LabeledPoint& p : points) out.push_back(score_point(w, p.coords));
  return out;
}

}  // namespace

AucValue evaluate_auc_direction(const Dataset& dataset, const Direction& direction) {
  check_inputs(dataset, direction, "evaluate_auc_direction");

  std::vector<Score> pos = score_points(dataset.positives(), direction);
  std::vector<Score> neg = score_points(dataset.negatives(), direction);
  auto less = [](const Score& a, const Score& b) { return compare_scores(a, b) < 0; };
  std::sort(pos.begin(), pos.end(), less);
  std::sort(neg.begin(), neg.end(), less);

  // Merge walk: for each positive score, the negatives strictly below it and
  // the negatives equal to it.
  std::uint64_t satisfied = 0;
  std::uint64_t tied = 0;
  std::size_t below = 0;  // negatives < current positive
  std::size_t upto = 0;   // negatives <= current positive
  for (const Score& s : pos) {
    while (below < neg.size() && compare_scores(neg[below], s) < 0) ++below;
    if (upto < below) upto = below;
    while (upto < neg.size() && compare_scores(neg[upto], s) <= 0) ++upto;
    satisfied += below;
    tied += upto - below;
  }
  return make_strict_auc(satisfied, tied, dataset.num_pairs());
}

AucValue evaluate_auc_direction_naive(const Dataset& dataset, const Direction& direction) {
  check_inputs(dataset, direction, "evaluate_auc_direction_naive");

  const std::vector<Score> pos = score_points(dataset.positives(), direction);
  const std::vector<Score> neg = score_points(dataset.negatives(), direction);

  std::uint64_t satisfied = 0;
  std::uint64_t tied = 0;
  for (const Score& p : pos) {
    for (const Score& q : neg) {
      const int order = compare_scores(p, q);
      if (order > 0) {
        ++satisfied;
      } else if (order == 0) {
        ++tied;
      }
    }
  }
  return make_strict_auc(satisfied, tied, dataset.num_pairs());
}

}  // namespace aucopt
