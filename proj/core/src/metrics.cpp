#include "aucopt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aucopt {

namespace {

std::vector<double> checked_sorted(std::span<const double> scores, const char* which) {
  if (scores.empty()) {
    throw std::invalid_argument(std::string("auc_from_scores: empty ") + which + " score sequence");
  }
  std::vector<double> out(scores.begin(), scores.end());
  for (double s : out) {
    if (!std::isfinite(s)) {
      throw std::invalid_argument(std::string("auc_from_scores: non-finite ") + which + " score");
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

double RocCurve::trapezoid_area() const {
  double area = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    area += (points[i].fpr - points[i - 1].fpr) * (points[i].tpr + points[i - 1].tpr) * 0.5;
  }
  return area;
}

AucValue auc_from_scores(std::span<const double> pos_scores, std::span<const double> neg_scores,
                         TiePolicy policy) {
  std::vector<double> pos = checked_sorted(pos_scores, "positive");
  std::vector<double> neg = checked_sorted(neg_scores, "negative");

  std::uint64_t satisfied = 0;
  std::uint64_t tied = 0;
  std::size_t below = 0;
  std::size_t upto = 0;
  for (double s : pos) {
    while (below < neg.size() && neg[below] < s) ++below;
    if (upto < below) upto = below;
    while (upto < neg.size() && neg[upto] <= s) ++upto;
    satisfied += below;
    tied += upto - below;
  }

  const std::uint64_t total = static_cast<std::uint64_t>(pos.size()) * neg.size();
  AucValue v;
  v.satisfied_pairs = satisfied;
  v.tied_pairs = tied;
  v.total_pairs = total;
  v.value = policy == TiePolicy::strict
                ? static_cast<double>(satisfied) / static_cast<double>(total)
                : (static_cast<double>(satisfied) + 0.5 * static_cast<double>(tied)) /
                      static_cast<double>(total);
  return v;
}

RocCurve roc_points(std::span<const double> pos_scores, std::span<const double> neg_scores) {
  std::vector<double> pos = checked_sorted(pos_scores, "positive");
  std::vector<double> neg = checked_sorted(neg_scores, "negative");

  // Walk distinct score values from high to low; each value contributes one
  // curve point, so a value present in both classes yields a diagonal segment.
  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  const double n_pos = static_cast<double>(pos.size());
  const double n_neg = static_cast<double>(neg.size());
  auto pi = pos.rbegin();
  auto ni = neg.rbegin();
  std::size_t tp = 0, fp = 0;
  while (pi != pos.rend() || ni != neg.rend()) {
    double v;
    if (pi == pos.rend()) {
      v = *ni;
    } else if (ni == neg.rend()) {
      v = *pi;
    } else {
      v = std::max(*pi, *ni);
    }
    while (pi != pos.rend() && *pi == v) {
      ++tp;
      ++pi;
    }
    while (ni != neg.rend() && *ni == v) {
      ++fp;
      ++ni;
    }
    curve.points.push_back({static_cast<double>(fp) / n_neg, static_cast<double>(tp) / n_pos});
  }
  return curve;
}

}  // namespace aucopt
