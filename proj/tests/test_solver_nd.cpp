#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "aucopt/evaluate.hpp"
#include "aucopt/oracles.hpp"
#include "aucopt/rng.hpp"
#include "aucopt/solver_nd.hpp"
#include "helpers.hpp"

using namespace aucopt;
using testutil::make_dataset;

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

TEST_CASE("projection examples") {
  const Direction ez{{0.0, 0.0, 1.0}};

  const Dataset in_plane = make_dataset({{1.0, 1.0, 0.0}}, {{0.5, 0.0, 0.0}});
  const Dataset projected = project_onto_hyperplane(in_plane, ez);
  CHECK(projected.positives()[0].coords == std::vector<double>{1.0, 1.0, 0.0});

  const Dataset parallel = make_dataset({{0.0, 0.0, 5.0}}, {{0.0, 0.0, 0.0}});
  CHECK(project_onto_hyperplane(parallel, ez).positives()[0].coords ==
        std::vector<double>{0.0, 0.0, 0.0});

  const Dataset generic = make_dataset({{1.0, 2.0, 3.0}}, {{0.0, 0.0, 0.0}});
  const Direction diag{{1.0, 1.0, 1.0}};
  const auto p = project_onto_hyperplane(generic, diag).positives()[0].coords;
  CHECK(p[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(p[2] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(dot(p, diag.weights)) <= 1e-9 * std::sqrt(dot(p, p)) * diag.norm());

  CHECK_THROWS_AS(project_onto_hyperplane(generic, Direction{{0.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("orthonormal complement is orthonormal") {
  Rng rng(60);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 2 + rng.below(3);
    Direction normal{rng.unit_vector(d)};
    for (double& w : normal.weights) w *= 1.0 + rng.below(5);
    const SubspaceBasis basis = orthonormal_complement(normal);
    REQUIRE(basis.vectors.size() == d - 1);
    for (std::size_t i = 0; i < basis.vectors.size(); ++i) {
      CHECK(std::abs(dot(basis.vectors[i], basis.vectors[i]) - 1.0) < 1e-10);
      CHECK(std::abs(dot(basis.vectors[i], normal.weights)) < 1e-10 * normal.norm());
      for (std::size_t j = i + 1; j < basis.vectors.size(); ++j) {
        CHECK(std::abs(dot(basis.vectors[i], basis.vectors[j])) < 1e-10);
      }
    }
  }
}

TEST_CASE("reduce_coordinates examples and properties") {
  const Direction ez{{0.0, 0.0, 1.0}};
  const SubspaceBasis basis = orthonormal_complement(ez);

  const Dataset flat = make_dataset({{3.0, 4.0, 0.0}}, {{1.0, -2.0, 0.0}});
  const Dataset reduced = reduce_coordinates(flat, basis);
  CHECK(reduced.dim() == 2);
  // The coordinates are some rotation of (x, y); inner products survive.
  const auto& a = flat.positives()[0].coords;
  const auto& b = flat.negatives()[0].coords;
  const auto& ra = reduced.positives()[0].coords;
  const auto& rb = reduced.negatives()[0].coords;
  CHECK(dot(ra, rb) == doctest::Approx(dot(a, b)).epsilon(1e-12));

  // Inner products preserved for random in-plane points.
  Rng rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 3 + rng.below(2);
    Direction normal{rng.unit_vector(d)};
    const SubspaceBasis frame = orthonormal_complement(normal);
    const Dataset raw = testutil::random_dataset(rng, 3, 3, d);
    const Dataset flat_random = project_onto_hyperplane(raw, normal);
    const Dataset red = reduce_coordinates(flat_random, frame);
    CHECK(red.dim() == d - 1);
    const auto& p0 = flat_random.positives()[0].coords;
    const auto& n0 = flat_random.negatives()[0].coords;
    CHECK(dot(red.positives()[0].coords, red.negatives()[0].coords) ==
          doctest::Approx(dot(p0, n0)).epsilon(1e-9));
  }

  // Off-hyperplane points are rejected.
  const Dataset off = make_dataset({{0.0, 0.0, 1.0}}, {{0.0, 0.0, 0.0}});
  CHECK_THROWS_AS(reduce_coordinates(off, basis), std::invalid_argument);
}

TEST_CASE("lift_direction examples and round trip") {
  const Direction ez{{0.0, 0.0, 1.0}};
  const SubspaceBasis basis = orthonormal_complement(ez);

  const Direction low{{1.0, 0.0}};
  const Direction lifted = lift_direction(basis, low);
  CHECK(std::abs(dot(lifted.weights, ez.weights)) < 1e-12);
  CHECK(lifted.norm() == doctest::Approx(1.0).epsilon(1e-12));

  Rng rng(62);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 3 + rng.below(2);
    const Direction normal{rng.unit_vector(d)};
    const SubspaceBasis frame = orthonormal_complement(normal);
    std::vector<double> low_w(d - 1);
    for (double& x : low_w) x = rng.gaussian();
    if (dot(low_w, low_w) == 0.0) continue;
    const Direction w = lift_direction(frame, Direction{low_w});
    CHECK(std::abs(dot(w.weights, normal.weights)) < 1e-9 * normal.norm() * w.norm());

    // Scores agree: p.lifted == reduced(p).low for in-plane points.
    const Dataset raw = testutil::random_dataset(rng, 2, 2, d);
    const Dataset flat = project_onto_hyperplane(raw, normal);
    const Dataset red = reduce_coordinates(flat, frame);
    const double lhs = dot(flat.positives()[0].coords, w.weights);
    const double rhs = dot(red.positives()[0].coords, low_w);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }

  CHECK_THROWS_AS(lift_direction(basis, Direction{{0.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("refine_by_perturbation examples") {
  // Candidate in the z = 0 plane ties the only pair; the nudge resolves it.
  const Dataset data = make_dataset({{0.0, 0.0, 1.0}}, {{0.0, 0.0, 0.0}});
  const Direction candidate{{1.0, 0.0, 0.0}};
  const Direction normal{{0.0, 0.0, 1.0}};
  CHECK(evaluate_auc_direction(data, candidate).satisfied_pairs == 0);
  const Direction refined = refine_by_perturbation(data, candidate, normal);
  CHECK(evaluate_auc_direction(data, refined).satisfied_pairs == 1);
  CHECK(refined.weights[2] > 0.0);

  // A candidate that already orders everything strictly stays put.
  const Dataset ordered = make_dataset({{0.0, 0.0, 1.0}}, {{0.0, 0.0, -1.0}});
  const Direction up{{0.0, 0.0, 1.0}};
  const Direction kept = refine_by_perturbation(ordered, up, Direction{{1.0, 0.0, 0.0}});
  CHECK(kept.weights == up.weights);

  // Never worse than the candidate.
  Rng rng(63);
  for (int trial = 0; trial < 20; ++trial) {
    const Dataset random = testutil::random_dataset(rng, 4, 4, 3);
    const Direction cand{rng.unit_vector(3)};
    const Direction norm_dir{rng.unit_vector(3)};
    const Direction out = refine_by_perturbation(random, cand, norm_dir);
    CHECK(evaluate_auc_direction(random, out).satisfied_pairs >=
          evaluate_auc_direction(random, cand).satisfied_pairs);
  }
}

TEST_CASE("solve_nd examples") {
  // Separable along z.
  const Dataset sep = make_dataset({{0.0, 0.0, 1.0}}, {{0.0, 0.0, 0.0}});
  CHECK(solve_nd(sep).auc.value == 1.0);

  // A 2D instance embedded in the z = 0 plane gives the 2D optimum.
  Rng rng(64);
  for (int trial = 0; trial < 8; ++trial) {
    const Dataset planar = testutil::random_dataset(rng, 1 + rng.below(5), 1 + rng.below(5), 2);
    std::vector<std::vector<double>> pos3, neg3;
    for (const auto& p : planar.positives()) pos3.push_back({p.coords[0], p.coords[1], 0.0});
    for (const auto& q : planar.negatives()) neg3.push_back({q.coords[0], q.coords[1], 0.0});
    const Dataset embedded = make_dataset(pos3, neg3);
    CHECK(solve_nd(embedded).auc.satisfied_pairs == solve_2d(planar).auc.satisfied_pairs);
  }

  // Lifted XOR: unsolvable in the shadow, separable with the z axis.
  const Dataset lifted = make_dataset({{0.0, 0.0, 1.0}, {1.0, 1.0, 1.0}},
                                      {{0.0, 1.0, 0.0}, {1.0, 0.0, 0.0}});
  CHECK(solve_nd(lifted).auc.value == 1.0);
  const Dataset shadow = make_dataset({{0.0, 0.0}, {1.0, 1.0}}, {{0.0, 1.0}, {1.0, 0.0}});
  CHECK(solve_2d(shadow).auc.value == 0.5);
}

TEST_CASE("solve_nd delegates at d=2 and validates arguments") {
  Rng rng(65);
  const Dataset data = testutil::random_dataset(rng, 6, 6, 2);
  CHECK(solve_nd(data, 2).auc.satisfied_pairs == solve_2d(data).auc.satisfied_pairs);

  CHECK_THROWS_AS(solve_nd(data, 3), std::invalid_argument);  // dimension mismatch
  const Dataset wide = testutil::random_dataset(rng, 2, 2, 5);
  CHECK_THROWS_AS(solve_nd(wide), std::invalid_argument);  // beyond the cap
  SolveOptions relaxed;
  relaxed.max_dim = 5;
  CHECK_NOTHROW(solve_nd(wide, relaxed));
  const Dataset thin = testutil::random_dataset(rng, 2, 2, 1);
  CHECK_THROWS_AS(solve_nd(thin), std::invalid_argument);  // d < 2
}

TEST_CASE("solve_nd equals the vertex oracle on random 3D instances") {
  Rng rng(66);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n_pos = 1 + rng.below(6);
    const std::size_t n_neg = 1 + rng.below(6);
    const Dataset data = trial % 4 == 0
                             ? testutil::random_int_dataset(rng, n_pos, n_neg, 3, -2, 2)
                             : testutil::random_dataset(rng, n_pos, n_neg, 3);
    const OptResult solved = solve_nd(data);
    const OptResult oracle = vertex_oracle_3d(data);
    REQUIRE(solved.auc.satisfied_pairs == oracle.auc.satisfied_pairs);
    CHECK(evaluate_auc_direction(data, solved.direction).satisfied_pairs ==
          solved.auc.satisfied_pairs);
  }
}

TEST_CASE("solve_nd dominates sampled directions") {
  Rng rng(67);
  for (int trial = 0; trial < 6; ++trial) {
    const Dataset data = testutil::random_dataset(rng, 4, 4, 3);
    const OptResult solved = solve_nd(data);
    const OptResult sampled = sample_directions_oracle(data, 500, trial);
    CHECK(solved.auc.satisfied_pairs >= sampled.auc.satisfied_pairs);
  }
}

TEST_CASE("solve_nd counts skipped degenerate normals") {
  const Dataset data = make_dataset({{1.0, 1.0, 1.0}, {0.0, 0.0, 1.0}},
                                    {{1.0, 1.0, 1.0}, {2.0, 0.0, 0.0}});
  const OptResult result = solve_nd(data);
  CHECK(result.degenerate_pairs == 1);
}

TEST_CASE("solve_nd is thread-count invariant") {
  Rng rng(68);
  for (int trial = 0; trial < 5; ++trial) {
    const Dataset data = testutil::random_dataset(rng, 5, 5, 3);
    SolveOptions sequential;
    SolveOptions parallel;
    parallel.threads = 4;
    const OptResult a = solve_nd(data, sequential);
    const OptResult b = solve_nd(data, parallel);
    CHECK(a.auc.satisfied_pairs == b.auc.satisfied_pairs);
    CHECK(a.direction.weights == b.direction.weights);
  }
}

TEST_CASE("solve_nd at d=4") {
  // Random small instances: the solver must dominate dense sampling, and on a
  // separable instance reach exactly 1.
  Rng rng(69);
  const Dataset data = testutil::random_dataset(rng, 3, 3, 4);
  const OptResult solved = solve_nd(data);
  CHECK(solved.auc.satisfied_pairs >=
        sample_directions_oracle(data, 2000, 5).auc.satisfied_pairs);

  const Dataset sep = testutil::random_separable_dataset(rng, 3, 4, 4);
  CHECK(solve_nd(sep).auc.value == 1.0);
}
