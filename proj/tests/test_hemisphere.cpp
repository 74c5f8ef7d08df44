#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "aucopt/evaluate.hpp"
#include "aucopt/hemisphere.hpp"
#include "aucopt/rng.hpp"
#include "aucopt/solver_nd.hpp"
#include "helpers.hpp"

using namespace aucopt;

TEST_CASE("construction example") {
  HemisphereInstance instance;
  instance.points = {{1.0, 0.0}, {0.0, 1.0}};
  instance.threshold = 2;

  const auto [dataset, t] = hemisphere_to_lao(instance);
  CHECK(t == 2);
  REQUIRE(dataset.num_pos() == 2);
  REQUIRE(dataset.num_neg() == 1);
  CHECK(dataset.positives()[0].coords == std::vector<double>{1.0, 0.0});
  CHECK(dataset.positives()[1].coords == std::vector<double>{0.0, 1.0});
  CHECK(dataset.negatives()[0].coords == std::vector<double>{0.0, 0.0});

  CHECK(verify_feasibility(dataset, Direction{{1.0, 1.0}}, 2));
  CHECK_FALSE(verify_feasibility(dataset, Direction{{1.0, -1.0}}, 2));
  CHECK(verify_feasibility(dataset, Direction{{1.0, -1.0}}, 0));  // vacuous
}

TEST_CASE("instance validation") {
  HemisphereInstance bad;
  bad.points = {{2.0, 0.0}};
  bad.threshold = 1;
  CHECK_THROWS_AS(validate_hemisphere(bad), std::invalid_argument);

  HemisphereInstance empty;
  CHECK_THROWS_AS(validate_hemisphere(empty), std::invalid_argument);

  HemisphereInstance high;
  high.points = {{1.0, 0.0}};
  high.threshold = 2;
  CHECK_THROWS_AS(validate_hemisphere(high), std::invalid_argument);
}

TEST_CASE("reduction fidelity on random instances") {
  Rng rng(700);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t d = 2 + rng.below(3);
    const std::size_t n = 3 + rng.below(10);
    const HemisphereInstance instance = random_hemisphere_instance(n, d, n / 2, trial);
    const auto [dataset, t] = hemisphere_to_lao(instance);
    CHECK(t == instance.threshold);

    for (int k = 0; k < 100; ++k) {
      const Direction w{rng.unit_vector(d)};
      const std::uint64_t pairs = evaluate_auc_direction(dataset, w).satisfied_pairs;
      CHECK(pairs == hemisphere_count(instance, w));
      CHECK(verify_feasibility(dataset, w, t) == (pairs >= t));
    }
  }
}

TEST_CASE("anchored construction keeps the count identity approximately") {
  // A nonzero anchor exercises the translation: the counts still match for
  // directions that produce no nearly-tied scores.
  Rng rng(701);
  HemisphereInstance instance = random_hemisphere_instance(8, 3, 4, 99);
  const std::vector<double> anchor{0.5, -1.0, 2.0};
  const auto [dataset, t] = hemisphere_to_lao(instance, anchor);
  CHECK(dataset.negatives()[0].coords == anchor);
  std::uint64_t agreements = 0;
  for (int k = 0; k < 50; ++k) {
    const Direction w{rng.unit_vector(3)};
    if (evaluate_auc_direction(dataset, w).satisfied_pairs == hemisphere_count(instance, w)) {
      ++agreements;
    }
  }
  CHECK(agreements == 50);
}

TEST_CASE("solver matches the exhaustive hemisphere optimum") {
  Rng rng(702);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t d = 2 + rng.below(2);  // d in {2, 3}
    const std::size_t n = d + 1 + rng.below(6);
    const HemisphereInstance instance = random_hemisphere_instance(n, d, 1, 1000 + trial);
    const auto [dataset, t] = hemisphere_to_lao(instance);

    const std::uint64_t exhaustive = testutil::hemisphere_max_exhaustive(instance);
    const OptResult solved = solve_nd(dataset);
    CHECK(solved.auc.satisfied_pairs == exhaustive);
  }
}

TEST_CASE("instance file round trip") {
  const HemisphereInstance instance = random_hemisphere_instance(6, 3, 3, 4242);
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "aucopt_test_instance.csv";
  write_hemisphere_instance(path, instance);
  const HemisphereInstance loaded = read_hemisphere_instance(path);
  CHECK(loaded.threshold == instance.threshold);
  REQUIRE(loaded.points.size() == instance.points.size());
  for (std::size_t i = 0; i < loaded.points.size(); ++i) {
    CHECK(loaded.points[i] == instance.points[i]);
  }
  std::filesystem::remove(path);

  CHECK_THROWS(read_hemisphere_instance("/nonexistent/instance.csv"));
}
