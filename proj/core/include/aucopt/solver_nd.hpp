#pragma once

#include <cstdint>
#include <vector>

#include "aucopt/sweep2d.hpp"
#include "aucopt/types.hpp"

namespace aucopt {

/// Orthonormal frame of the hyperplane through the origin with the given
/// normal: d-1 mutually orthonormal vectors, each orthogonal to the normal.
struct SubspaceBasis {
  Direction normal;
  std::vector<std::vector<double>> vectors;
};

/// Deterministic reflection-based completion of the normal; Gram-Schmidt on
/// the standard basis is the fallback if the reflection degenerates.
SubspaceBasis orthonormal_complement(const Direction& normal);

/// Orthogonal projection of every point onto the hyperplane of the normal:
/// P(x) = x - (x.u / |u|^2) u. Labels are preserved.
Dataset project_onto_hyperplane(const Dataset& dataset, const Direction& normal);

/// Rewrites on-hyperplane points in the d-1 basis coordinates (p.u_1, ...,
/// p.u_{d-1}). Throws if a point is off the hyperplane beyond tolerance.
Dataset reduce_coordinates(const Dataset& projected, const SubspaceBasis& basis);

/// Maps a direction in basis coordinates back to the full space:
/// w = sum_k low_k u_k. The result lies in the hyperplane.
Direction lift_direction(const SubspaceBasis& basis, const Direction& low_dir);

/// Resolves ties of a candidate lying on the hyperplane of the normal: halves
/// a step delta until the satisfied-pair counts of candidate +- delta*normal
/// stabilize (at most 40 halvings), then returns whichever of the three
/// directions satisfies the most pairs. Never worse than the candidate.
Direction refine_by_perturbation(const Dataset& dataset, const Direction& candidate,
                                 const Direction& normal);

struct SolveOptions {
  /// Recursion is O((n+ n-)^(d-1) log(n+ n-)); dimensions above the cap are
  /// rejected rather than silently approximated.
  std::size_t max_dim = 4;
  /// Worker threads for the candidate-normal loop (d > 2 only). The result is
  /// identical to the sequential order for any thread count.
  unsigned threads = 1;
};

/// Exact maximizer of the strict empirical AUC over directions in R^d.
/// Delegates to solve_2d at d = 2; above that, recurses over the candidate
/// hyperplanes spanned by each nonzero difference x+ - x-, solving the
/// projected problem in d-1 coordinates and refining lifted candidates by
/// perturbation.
OptResult solve_nd(const Dataset& dataset, std::size_t dim, const SolveOptions& options = {});
OptResult solve_nd(const Dataset& dataset, const SolveOptions& options = {});

}  // namespace aucopt
