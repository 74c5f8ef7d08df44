#pragma once

// Shared fixtures and independent reference computations for the test suites.
// The oracles here (pair counting, quadrature, the hemisphere sweep) do not
// call into the code paths they are used to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "aucopt/hemisphere.hpp"
#include "aucopt/rng.hpp"
#include "aucopt/types.hpp"

namespace testutil {

inline aucopt::LabeledPoint pt(std::vector<double> coords, int label) {
  aucopt::LabeledPoint p;
  p.coords = std::move(coords);
  p.label = label;
  return p;
}

inline aucopt::Dataset make_dataset(std::vector<std::vector<double>> pos,
                                    std::vector<std::vector<double>> neg) {
  std::vector<aucopt::LabeledPoint> positives, negatives;
  for (auto& c : pos) positives.push_back(pt(std::move(c), +1));
  for (auto& c : neg) negatives.push_back(pt(std::move(c), -1));
  return aucopt::Dataset(std::move(positives), std::move(negatives));
}

struct PairCount {
  std::uint64_t satisfied = 0;
  std::uint64_t tied = 0;
};

/// Plain double-loop pair count, independent of the library's evaluators.
inline PairCount count_pairs(const aucopt::Dataset& dataset, const aucopt::Direction& w) {
  PairCount out;
  for (const auto& p : dataset.positives()) {
    double sp = 0.0;
    for (std::size_t k = 0; k < w.weights.size(); ++k) sp += w.weights[k] * p.coords[k];
    for (const auto& q : dataset.negatives()) {
      double sq = 0.0;
      for (std::size_t k = 0; k < w.weights.size(); ++k) sq += w.weights[k] * q.coords[k];
      if (sp > sq) {
        ++out.satisfied;
      } else if (sp == sq) {
        ++out.tied;
      }
    }
  }
  return out;
}

inline aucopt::Dataset random_dataset(aucopt::Rng& rng, std::size_t n_pos, std::size_t n_neg,
                                      std::size_t d) {
  std::vector<aucopt::LabeledPoint> pos, neg;
  for (std::size_t i = 0; i < n_pos; ++i) {
    std::vector<double> c(d);
    for (double& x : c) x = rng.gaussian();
    pos.push_back(pt(std::move(c), +1));
  }
  for (std::size_t i = 0; i < n_neg; ++i) {
    std::vector<double> c(d);
    for (double& x : c) x = rng.gaussian();
    neg.push_back(pt(std::move(c), -1));
  }
  return aucopt::Dataset(std::move(pos), std::move(neg));
}

/// Small-integer coordinates: guarantees duplicate points, coincident
/// cross-class pairs, collinear triples and vertical differences.
inline aucopt::Dataset random_int_dataset(aucopt::Rng& rng, std::size_t n_pos, std::size_t n_neg,
                                          std::size_t d, int lo = -3, int hi = 3) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo + 1);
  std::vector<aucopt::LabeledPoint> pos, neg;
  for (std::size_t i = 0; i < n_pos; ++i) {
    std::vector<double> c(d);
    for (double& x : c) x = static_cast<double>(lo + static_cast<int>(rng.below(range)));
    pos.push_back(pt(std::move(c), +1));
  }
  for (std::size_t i = 0; i < n_neg; ++i) {
    std::vector<double> c(d);
    for (double& x : c) x = static_cast<double>(lo + static_cast<int>(rng.below(range)));
    neg.push_back(pt(std::move(c), -1));
  }
  return aucopt::Dataset(std::move(pos), std::move(neg));
}

/// Strictly separable instance: random points relabeled by a random direction
/// with the top scores positive and a nonzero margin between the classes.
inline aucopt::Dataset random_separable_dataset(aucopt::Rng& rng, std::size_t n_pos,
                                                std::size_t n_neg, std::size_t d) {
  while (true) {
    const std::vector<double> w = rng.unit_vector(d);
    std::vector<std::pair<double, std::vector<double>>> scored;
    for (std::size_t i = 0; i < n_pos + n_neg; ++i) {
      std::vector<double> c(d);
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        c[k] = rng.gaussian();
        s += w[k] * c[k];
      }
      scored.emplace_back(s, std::move(c));
    }
    std::sort(scored.begin(), scored.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    if (scored[n_pos - 1].first <= scored[n_pos].first) continue;  // tie at the boundary
    std::vector<aucopt::LabeledPoint> pos, neg;
    for (std::size_t i = 0; i < scored.size(); ++i) {
      (i < n_pos ? pos : neg).push_back(pt(std::move(scored[i].second), i < n_pos ? +1 : -1));
    }
    return aucopt::Dataset(std::move(pos), std::move(neg));
  }
}

// ---------------------------------------------------------------------------
// Student t reference: two-sided p-value by adaptive Simpson quadrature over
// the density, used as the independent check of the Welch test.

inline double student_t_pdf(double x, double dof) {
  const double half = 0.5 * (dof + 1.0);
  const double log_norm = std::lgamma(half) - std::lgamma(0.5 * dof) -
                          0.5 * std::log(dof * 3.14159265358979323846);
  return std::exp(log_norm - half * std::log1p(x * x / dof));
}

inline double simpson_recurse(double a, double b, double fa, double fm, double fb, double whole,
                              double tol, int depth, double dof) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = student_t_pdf(lm, dof);
  const double frm = student_t_pdf(rm, dof);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson_recurse(a, m, fa, flm, fm, left, tol * 0.5, depth - 1, dof) +
         simpson_recurse(m, b, fm, frm, fb, right, tol * 0.5, depth - 1, dof);
}

inline double student_t_two_sided_p(double t, double dof) {
  const double a = std::abs(t);
  // Extend the integration bound until the remaining tail is negligible.
  double b = a + 8.0;
  while (student_t_pdf(b, dof) * b / dof > 1e-14 && b < 1e7) b *= 2.0;
  const double fa = student_t_pdf(a, dof);
  const double fb = student_t_pdf(b, dof);
  const double m = 0.5 * (a + b);
  const double fm = student_t_pdf(m, dof);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tail = simpson_recurse(a, b, fa, fm, fb, whole, 1e-14, 48, dof);
  return std::min(1.0, 2.0 * tail);
}

// ---------------------------------------------------------------------------
// Exhaustive open-hemisphere optimum for small instances. Every full
// dimensional cone of the central arrangement of the instance vectors touches
// an extreme ray spanned by the null space of some (d-1)-subset; for each such
// ray and target sign pattern sigma the direction step z solving G z = sigma
// (G the subset Gram matrix) enters exactly the adjacent cone with pattern
// sigma. Evaluating the counts over a ladder of step sizes covers them all.

inline std::uint64_t hemisphere_count_direct(const aucopt::HemisphereInstance& instance,
                                             const std::vector<double>& w) {
  std::uint64_t count = 0;
  for (const auto& s : instance.points) {
    double dot = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) dot += w[k] * s[k];
    if (dot > 0.0) ++count;
  }
  return count;
}

/// Solves A x = b by Gaussian elimination with partial pivoting; returns
/// false when A is singular. A is m x m, row-major.
inline bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                         std::vector<double>& x) {
  const std::size_t m = b.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < m; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-12) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < m; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < m; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(m, 0.0);
  for (std::size_t r = m; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < m; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return true;
}

/// Unit-scale null direction of d-1 vectors in R^d (d <= 4), via the
/// generalized cross product; empty when the vectors are dependent.
inline std::vector<double> null_direction(const std::vector<const std::vector<double>*>& rows,
                                          std::size_t d) {
  std::vector<double> w(d, 0.0);
  if (d == 2) {
    const auto& s = *rows[0];
    w = {-s[1], s[0]};
  } else if (d == 3) {
    const auto& a = *rows[0];
    const auto& b = *rows[1];
    w = {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  } else if (d == 4) {
    const auto& a = *rows[0];
    const auto& b = *rows[1];
    const auto& c = *rows[2];
    auto det3 = [](double m00, double m01, double m02, double m10, double m11, double m12,
                   double m20, double m21, double m22) {
      return m00 * (m11 * m22 - m12 * m21) - m01 * (m10 * m22 - m12 * m20) +
             m02 * (m10 * m21 - m11 * m20);
    };
    w[0] = det3(a[1], a[2], a[3], b[1], b[2], b[3], c[1], c[2], c[3]);
    w[1] = -det3(a[0], a[2], a[3], b[0], b[2], b[3], c[0], c[2], c[3]);
    w[2] = det3(a[0], a[1], a[3], b[0], b[1], b[3], c[0], c[1], c[3]);
    w[3] = -det3(a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2]);
  } else {
    throw std::invalid_argument("null_direction: d must be 2, 3 or 4");
  }
  double norm = 0.0;
  for (double x : w) norm += x * x;
  if (norm < 1e-18) return {};
  return w;
}

inline std::uint64_t hemisphere_max_exhaustive(const aucopt::HemisphereInstance& instance) {
  const std::size_t d = instance.dim();
  const std::size_t t = instance.points.size();
  if (d < 2 || d > 4) throw std::invalid_argument("hemisphere_max_exhaustive: d must be in [2,4]");

  std::uint64_t best = 0;
  auto consider = [&](const std::vector<double>& w) {
    best = std::max(best, hemisphere_count_direct(instance, w));
  };

  for (const auto& s : instance.points) {
    consider(s);
    std::vector<double> neg(s);
    for (double& x : neg) x = -x;
    consider(neg);
  }

  const std::size_t subset_size = d - 1;

  auto probe_subset = [&](const std::vector<std::size_t>& subset) {
    std::vector<const std::vector<double>*> rows;
    for (std::size_t k : subset) rows.push_back(&instance.points[k]);
    const std::vector<double> ray = null_direction(rows, d);
    if (ray.empty()) return;

    std::vector<std::vector<double>> gram(subset_size, std::vector<double>(subset_size, 0.0));
    for (std::size_t r = 0; r < subset_size; ++r) {
      for (std::size_t c = 0; c < subset_size; ++c) {
        double dot = 0.0;
        for (std::size_t k = 0; k < d; ++k) dot += (*rows[r])[k] * (*rows[c])[k];
        gram[r][c] = dot;
      }
    }

    double ray_norm = 0.0;
    for (double x : ray) ray_norm += x * x;
    ray_norm = std::sqrt(ray_norm);

    for (std::uint32_t mask = 0; mask < (1u << subset_size); ++mask) {
      std::vector<double> sigma(subset_size);
      for (std::size_t k = 0; k < subset_size; ++k) sigma[k] = (mask >> k) & 1 ? 1.0 : -1.0;
      std::vector<double> beta;
      if (!solve_linear(gram, sigma, beta)) continue;
      std::vector<double> z(d, 0.0);
      for (std::size_t k = 0; k < subset_size; ++k) {
        for (std::size_t c = 0; c < d; ++c) z[c] += beta[k] * (*rows[k])[c];
      }
      // Step window: stay below the smallest genuine |ray.s|/|z.s| ratio so
      // no off-subset point flips, but above the roundoff of the subset dots
      // so the requested pattern wins.
      double ceiling = std::numeric_limits<double>::infinity();
      double floor = 0.0;
      for (const auto& s : instance.points) {
        double p = 0.0, q = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
          p += ray[c] * s[c];
          q += z[c] * s[c];
        }
        if (std::abs(p) > 1e-12 * ray_norm) {
          if (q != 0.0) ceiling = std::min(ceiling, std::abs(p) / std::abs(q));
        } else if (q != 0.0) {
          floor = std::max(floor, std::abs(p) / std::abs(q));
        }
      }
      if (!std::isfinite(ceiling)) ceiling = ray_norm;
      double delta = std::sqrt(std::max(floor, ceiling * 0x1.0p-40) * ceiling);
      if (!(delta > 0.0) || delta >= ceiling) delta = 0.5 * ceiling;
      for (double base_sign : {1.0, -1.0}) {
        std::vector<double> w(d);
        for (std::size_t c = 0; c < d; ++c) w[c] = base_sign * ray[c] + delta * z[c];
        consider(w);
      }
    }
  };

  if (t >= subset_size) {
    std::vector<std::size_t> subset(subset_size);
    for (std::size_t k = 0; k < subset_size; ++k) subset[k] = k;
    while (true) {
      probe_subset(subset);
      // Next lexicographic combination of subset_size indices out of t.
      std::size_t k = subset_size;
      bool advanced = false;
      while (k-- > 0) {
        if (subset[k] != k + t - subset_size) {
          ++subset[k];
          for (std::size_t j = k + 1; j < subset_size; ++j) subset[j] = subset[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return best;
}

}  // namespace testutil
