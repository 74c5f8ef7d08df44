#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "aucopt/types.hpp"

namespace aucopt {

/// An open-hemisphere feasibility instance: unit vectors and a threshold m.
/// Asks for a direction w with w.s > 0 for at least m of the vectors.
struct HemisphereInstance {
  std::vector<std::vector<double>> points;
  std::size_t threshold = 0;

  std::size_t dim() const { return points.empty() ? 0 : points.front().size(); }
};

/// Throws std::invalid_argument unless every point is unit-norm (within 1e-9),
/// the instance is nonempty and the threshold does not exceed the point count.
void validate_hemisphere(const HemisphereInstance& instance);

/// Builds the equivalent AUC dataset: one positive per unit vector, one
/// negative at the anchor (origin by default), positives shifted by the
/// anchor. For every direction the satisfied-pair count on the returned
/// dataset equals the open-hemisphere count on the instance; with the origin
/// anchor the two counts compare the same floats, so the identity is exact.
/// Returns the dataset and the pair threshold t (= m).
std::pair<Dataset, std::uint64_t> hemisphere_to_lao(const HemisphereInstance& instance);
std::pair<Dataset, std::uint64_t> hemisphere_to_lao(const HemisphereInstance& instance,
                                                    std::span<const double> anchor);

/// |{i : w.s_i > 0}|.
std::uint64_t hemisphere_count(const HemisphereInstance& instance, const Direction& w);

/// True iff at least t positive-negative pairs are satisfied by w. Early-exits
/// once the counter reaches t; O(n+ n- d).
bool verify_feasibility(const Dataset& dataset, const Direction& w, std::uint64_t t);

/// Instance files: a "threshold,<m>" line followed by one unit vector per
/// line in CSV.
HemisphereInstance read_hemisphere_instance(const std::filesystem::path& path);
void write_hemisphere_instance(const std::filesystem::path& path,
                               const HemisphereInstance& instance);

/// Uniformly random unit vectors; threshold m clamped to [1, n].
HemisphereInstance random_hemisphere_instance(std::size_t n, std::size_t d, std::size_t m,
                                              std::uint64_t seed);

}  // namespace aucopt
