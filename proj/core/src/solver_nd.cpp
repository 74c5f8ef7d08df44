#include "aucopt/solver_nd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "aucopt/evaluate.hpp"

namespace aucopt {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

SubspaceBasis gram_schmidt_complement(const Direction& normal) {
  const std::size_t d = normal.dim();
  const double n = normal.norm();
  std::vector<double> unit(normal.weights);
  for (double& c : unit) c /= n;

  SubspaceBasis basis;
  basis.normal = normal;
  for (std::size_t axis = 0; axis < d; ++axis) {
    if (basis.vectors.size() == d - 1) break;
    std::vector<double> v(d, 0.0);
    v[axis] = 1.0;
    double c = dot(v, unit);
    for (std::size_t k = 0; k < d; ++k) v[k] -= c * unit[k];
    for (const auto& b : basis.vectors) {
      const double cb = dot(v, b);
      for (std::size_t k = 0; k < d; ++k) v[k] -= cb * b[k];
    }
    const double vn = norm(v);
    if (vn < 1e-8) continue;
    for (double& x : v) x /= vn;
    basis.vectors.push_back(std::move(v));
  }
  if (basis.vectors.size() != d - 1) {
    throw std::runtime_error("orthonormal_complement: failed to complete basis");
  }
  return basis;
}

}  // namespace

SubspaceBasis orthonormal_complement(const Direction& normal) {
  validate_direction(normal);
  const std::size_t d = normal.dim();
  if (d < 2) {
    throw std::invalid_argument("orthonormal_complement: dimension must be at least 2");
  }

  const double n = normal.norm();
  std::vector<double> unit(normal.weights);
  for (double& c : unit) c /= n;

  // Householder vector v = unit + sign(unit[0]) e0; the reflector
  // I - 2 v v^T / (v.v) maps e0 to -sign(unit[0]) * unit, and its remaining
  // columns form an orthonormal basis of the complement.
  const double sign0 = unit[0] >= 0.0 ? 1.0 : -1.0;
  std::vector<double> v(unit);
  v[0] += sign0;
  const double vv = dot(v, v);  // 2(1 + |unit[0]|) >= 2 unless roundoff degenerates
  if (!(vv > 1e-12)) {
    return gram_schmidt_complement(normal);
  }

  SubspaceBasis basis;
  basis.normal = normal;
  basis.vectors.reserve(d - 1);
  for (std::size_t j = 1; j < d; ++j) {
    std::vector<double> col(d, 0.0);
    const double scale = 2.0 * v[j] / vv;
    for (std::size_t k = 0; k < d; ++k) col[k] = -scale * v[k];
    col[j] += 1.0;
    basis.vectors.push_back(std::move(col));
  }
  return basis;
}

Dataset project_onto_hyperplane(const Dataset& dataset, const Direction& normal) {
  validate_direction(normal);
  if (normal.dim() != dataset.dim()) {
    throw std::invalid_argument("project_onto_hyperplane: dimension mismatch");
  }
  const double norm_sq = dot(normal.weights, normal.weights);

  auto project_points = [&](const std::vector<LabeledPoint>& points) {
    std::vector<LabeledPoint> out;
    out.reserve(points.size());
    for (const LabeledPoint& p : points) {
      LabeledPoint q = p;
      const double factor = dot(p.coords, normal.weights) / norm_sq;
      for (std::size_t k = 0; k < q.coords.size(); ++k) {
        q.coords[k] -= factor * normal.weights[k];
      }
      out.push_back(std::move(q));
    }
    return out;
  };
  return Dataset(project_points(dataset.positives()), project_points(dataset.negatives()));
}

Dataset reduce_coordinates(const Dataset& projected, const SubspaceBasis& basis) {
  const std::size_t d = basis.normal.dim();
  if (projected.dim() != d) {
    throw std::invalid_argument("reduce_coordinates: dimension mismatch");
  }
  const double normal_norm = basis.normal.norm();

  auto reduce_points = [&](const std::vector<LabeledPoint>& points) {
    std::vector<LabeledPoint> out;
    out.reserve(points.size());
    for (const LabeledPoint& p : points) {
      const double off = std::abs(dot(p.coords, basis.normal.weights));
      if (off > 1e-8 * std::max(1.0, norm(p.coords)) * normal_norm) {
        throw std::invalid_argument("reduce_coordinates: point off the hyperplane beyond tolerance");
      }
      LabeledPoint q;
      q.label = p.label;
      q.coords.reserve(d - 1);
      for (const auto& b : basis.vectors) {
        q.coords.push_back(dot(p.coords, b));
      }
      out.push_back(std::move(q));
    }
    return out;
  };
  return Dataset(reduce_points(projected.positives()), reduce_points(projected.negatives()));
}

Direction lift_direction(const SubspaceBasis& basis, const Direction& low_dir) {
  validate_direction(low_dir);
  if (low_dir.dim() != basis.vectors.size()) {
    throw std::invalid_argument("lift_direction: direction dimension does not match basis");
  }
  const std::size_t d = basis.normal.dim();
  Direction out;
  out.weights.assign(d, 0.0);
  for (std::size_t k = 0; k < basis.vectors.size(); ++k) {
    for (std::size_t c = 0; c < d; ++c) {
      out.weights[c] += low_dir.weights[k] * basis.vectors[k][c];
    }
  }
  return out;
}

Direction refine_by_perturbation(const Dataset& dataset, const Direction& candidate,
                                 const Direction& normal) {
  validate_direction(candidate);

  auto count_of = [&](const Direction& w) -> std::uint64_t {
    try {
      return evaluate_auc_direction(dataset, w).satisfied_pairs;
    } catch (const std::invalid_argument&) {
      return 0;  // degenerate perturbation, never selected over the candidate
    }
  };
  auto shifted = [&](double delta) {
    Direction w = candidate;
    for (std::size_t k = 0; k < w.weights.size(); ++k) {
      w.weights[k] += delta * normal.weights[k];
    }
    return w;
  };

  const double normal_norm = normal.norm();
  const double candidate_norm = candidate.norm();
  if (!(normal_norm > 0.0)) return candidate;

  // Safe step window: below `ceiling` no strictly ordered pair flips, above
  // `floor` every tied pair (a roundoff-level score difference) is dominated
  // by its response to the normal. Pairs tied with no response stay tied.
  double ceiling = std::numeric_limits<double>::infinity();
  double floor = 0.0;
  const std::size_t d = dataset.dim();
  for (const LabeledPoint& p : dataset.positives()) {
    for (const LabeledPoint& q : dataset.negatives()) {
      double score_diff = 0.0;
      double response = 0.0;
      double delta_norm_sq = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double dk = p.coords[k] - q.coords[k];
        score_diff += candidate.weights[k] * dk;
        response += normal.weights[k] * dk;
        delta_norm_sq += dk * dk;
      }
      const double tie_scale = 1e-9 * candidate_norm * std::sqrt(delta_norm_sq);
      if (std::abs(score_diff) > tie_scale) {
        if (response != 0.0) {
          ceiling = std::min(ceiling, std::abs(score_diff) / std::abs(response));
        }
      } else if (response != 0.0) {
        floor = std::max(floor, std::abs(score_diff) / std::abs(response));
      }
    }
  }
  if (!std::isfinite(ceiling)) ceiling = candidate_norm / normal_norm;
  double target = std::sqrt(std::max(floor, ceiling * 0x1.0p-40) * ceiling);
  if (!(target > 0.0) || target >= ceiling) target = 0.5 * ceiling;

  const std::uint64_t base = count_of(candidate);
  std::uint64_t best_count = base;
  Direction best = candidate;
  auto try_step = [&](double delta) {
    for (double sign : {1.0, -1.0}) {
      const Direction w = shifted(sign * delta);
      const std::uint64_t c = count_of(w);
      if (c > best_count) {
        best_count = c;
        best = w;
      }
    }
  };

  // Halve from the coarse start until the step is inside the safe window,
  // then probe the window itself.
  double delta = candidate_norm / (1024.0 * normal_norm);
  for (int halving = 0; halving <= 40 && delta > target; ++halving) {
    try_step(delta);
    delta *= 0.5;
  }
  try_step(target);
  return best;
}

OptResult solve_nd(const Dataset& dataset, std::size_t dim, const SolveOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  if (dim != dataset.dim()) {
    throw std::invalid_argument("solve_nd: requested dimension does not match dataset");
  }
  if (dim < 2) {
    throw std::invalid_argument("solve_nd: dimension must be at least 2");
  }
  if (dim > options.max_dim) {
    throw std::invalid_argument("solve_nd: dimension " + std::to_string(dim) +
                                " exceeds the configured cap of " + std::to_string(options.max_dim));
  }
  dataset.require_both_classes("solve_nd");

  if (dim == 2) {
    return solve_2d(dataset);
  }

  const auto& pos = dataset.positives();
  const auto& neg = dataset.negatives();

  struct LocalBest {
    bool valid = false;
    std::uint64_t satisfied = 0;
    std::size_t order = 0;
    Direction direction;
    std::uint64_t events = 0;
    std::uint64_t degenerate = 0;
    std::uint64_t candidates = 0;
  };

  // Examines one subproblem candidate in the original space. Ties keep the
  // earlier enumeration entry, so the reduction is order-deterministic.
  auto consider = [&](LocalBest& acc, std::size_t pair_index, Direction refined,
                      std::uint64_t satisfied) {
    ++acc.candidates;
    if (!acc.valid || satisfied > acc.satisfied) {
      acc.valid = true;
      acc.satisfied = satisfied;
      acc.order = pair_index;
      acc.direction = std::move(refined);
    }
  };

  auto solve_for_normal = [&](std::size_t pair_index, LocalBest& acc) {
    const std::size_t i = pair_index / neg.size();
    const std::size_t j = pair_index % neg.size();
    Direction u;
    u.weights.resize(dim);
    bool nonzero = false;
    for (std::size_t k = 0; k < dim; ++k) {
      u.weights[k] = pos[i].coords[k] - neg[j].coords[k];
      if (u.weights[k] != 0.0) nonzero = true;
    }
    if (!nonzero) {
      ++acc.degenerate;
      return;
    }

    Dataset projected = project_onto_hyperplane(dataset, u);
    SubspaceBasis basis = orthonormal_complement(u);
    Dataset reduced = reduce_coordinates(projected, basis);

    if (dim - 1 == 2) {
      // Reduction roundoff can split exactly equal subproblem slopes into
      // hairline-separated ones whose mid-cell margins do not survive the
      // lift back, and can blur nearly parallel differences. Scan the sweep's
      // cells in descending count order, re-scoring each candidate in the
      // original space, until no unscanned cell could beat the best even
      // with every ambiguous pair granted.
      std::uint64_t budget = 0;
      const auto& rpos = reduced.positives();
      const auto& rneg = reduced.negatives();
      for (std::size_t a = 0; a < rpos.size(); ++a) {
        for (std::size_t b = 0; b < rneg.size(); ++b) {
          const double r0 = rpos[a].coords[0] - rneg[b].coords[0];
          const double r1 = rpos[a].coords[1] - rneg[b].coords[1];
          double orig_sq = 0.0;
          for (std::size_t k = 0; k < dim; ++k) {
            const double dk = pos[a].coords[k] - neg[b].coords[k];
            orig_sq += dk * dk;
          }
          if (std::sqrt(r0 * r0 + r1 * r1) <= 1e-9 * std::sqrt(orig_sq)) ++budget;
        }
      }
      const SlopeEnumeration events = enumerate_slope_events(reduced);
      acc.events += events.total_events;
      for (std::size_t g = 0; g + 1 < events.groups.size(); ++g) {
        const double lo = events.groups[g].front().slope_value();
        const double hi = events.groups[g + 1].front().slope_value();
        if (std::abs(hi - lo) <= 1e-9 * std::max({1.0, std::abs(lo), std::abs(hi)})) {
          budget += events.groups[g].size() + events.groups[g + 1].size();
        }
      }

      std::vector<CellCandidate> cells = enumerate_cell_candidates(reduced);
      std::vector<std::size_t> order(cells.size());
      for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return cells[x].satisfied > cells[y].satisfied;
      });

      bool have_local = false;
      std::uint64_t local_best = 0;
      for (std::size_t idx : order) {
        if (have_local && cells[idx].satisfied + budget <= local_best) break;
        Direction lifted = lift_direction(basis, cells[idx].direction);
        Direction refined = refine_by_perturbation(dataset, lifted, u);
        const std::uint64_t satisfied = evaluate_auc_direction(dataset, refined).satisfied_pairs;
        if (!have_local || satisfied > local_best) {
          have_local = true;
          local_best = satisfied;
        }
        consider(acc, pair_index, std::move(refined), satisfied);
      }
      return;
    }

    SolveOptions inner = options;
    inner.threads = 1;
    OptResult sub = solve_nd(reduced, dim - 1, inner);
    acc.events += sub.events_processed;

    Direction lifted = lift_direction(basis, sub.direction);
    Direction refined = refine_by_perturbation(dataset, lifted, u);
    const std::uint64_t satisfied = evaluate_auc_direction(dataset, refined).satisfied_pairs;
    consider(acc, pair_index, std::move(refined), satisfied);
  };

  const std::size_t num_normals = pos.size() * neg.size();
  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(num_normals)));

  std::vector<LocalBest> partials(threads);
  if (threads == 1) {
    for (std::size_t t = 0; t < num_normals; ++t) solve_for_normal(t, partials[0]);
  } else {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w]() {
        try {
          for (std::size_t t = w; t < num_normals; t += threads) {
            solve_for_normal(t, partials[w]);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
    for (const auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }

  // Deterministic reduction: maximal count, ties broken by enumeration order.
  LocalBest merged;
  for (const LocalBest& p : partials) {
    merged.events += p.events;
    merged.degenerate += p.degenerate;
    merged.candidates += p.candidates;
    if (p.valid && (!merged.valid || p.satisfied > merged.satisfied ||
                    (p.satisfied == merged.satisfied && p.order < merged.order))) {
      merged.valid = true;
      merged.satisfied = p.satisfied;
      merged.order = p.order;
      merged.direction = p.direction;
    }
  }

  // Axis fallback covers the fully degenerate dataset (every pair coincident)
  // and costs 2d evaluations.
  Direction best_dir = merged.valid ? merged.direction : Direction{};
  std::uint64_t best_count = merged.satisfied;
  bool have = merged.valid;
  for (std::size_t k = 0; k < dim; ++k) {
    for (double s : {1.0, -1.0}) {
      Direction axis;
      axis.weights.assign(dim, 0.0);
      axis.weights[k] = s;
      const std::uint64_t c = evaluate_auc_direction(dataset, axis).satisfied_pairs;
      ++merged.candidates;
      if (!have || c > best_count) {
        have = true;
        best_count = c;
        best_dir = std::move(axis);
      }
    }
  }

  OptResult result;
  result.auc = evaluate_auc_direction(dataset, best_dir);
  result.direction = std::move(best_dir);
  result.events_processed = merged.events;
  result.degenerate_pairs = merged.degenerate;
  result.candidates_evaluated = merged.candidates;
  result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

OptResult solve_nd(const Dataset& dataset, const SolveOptions& options) {
  return solve_nd(dataset, dataset.dim(), options);
}

}  // namespace aucopt
