#pragma once

#include <cstdint>

#include "aucopt/sweep2d.hpp"
#include "aucopt/types.hpp"

namespace aucopt {

// Reference optimizers used to certify the solvers. They share no sweep or
// recursion code with solve_2d / solve_nd; only the from-scratch AUC
// evaluation is common, and that is itself cross-checked against its naive
// double loop.

/// Evaluates the AUC from scratch on both sides of every cross-class slope
/// (plus the axis directions) and returns the best. O(n^3 log n): the price
/// of independence from the sweep.
OptResult brute_force_2d(const Dataset& dataset);

/// Best of `num_samples` directions drawn uniformly from the unit sphere.
/// Deterministic for a fixed seed; a lower bound on the true optimum in any
/// dimension.
OptResult sample_directions_oracle(const Dataset& dataset, std::size_t num_samples,
                                   std::uint64_t seed);

/// Exhaustive d=3 oracle: for every independent pair of difference vectors it
/// evaluates the cross product nudged into all nine surrounding sign
/// combinations, plus each single difference vector nudged within its
/// orthogonal frame. Every full-dimensional cone of the difference
/// arrangement is adjacent to one of these perturbed rays. Guarded to small
/// instances (n+ n- <= max_pairs).
OptResult vertex_oracle_3d(const Dataset& dataset, std::uint64_t max_pairs = 64);

}  // namespace aucopt
