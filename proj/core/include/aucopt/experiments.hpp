#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "aucopt/metrics.hpp"
#include "aucopt/types.hpp"

namespace aucopt {

enum class MethodKind {
  exact,             ///< solve_2d / solve_nd depending on dimension
  logistic,          ///< plain logistic regression (CV-tuned)
  logistic_balanced, ///< class-weighted logistic regression (CV-tuned)
  pairwise_hinge,    ///< stochastic pairwise hinge surrogate (CV-tuned)
  pairwise_square,   ///< stochastic pairwise square surrogate (CV-tuned)
};

std::string method_name(MethodKind kind);
MethodKind method_from_name(const std::string& name);
std::vector<MethodKind> parse_method_list(const std::string& comma_separated);

/// Per-trial strict AUC scores of every method on one dataset.
struct TrialMatrix {
  std::string dataset_name;
  std::vector<std::string> methods;
  std::size_t trials = 0;
  /// Indexed [trial][method]; NaN where the trial failed for that method.
  std::vector<std::vector<double>> train_scores;
  std::vector<std::vector<double>> test_scores;
  /// Failure reason per [trial][method]; empty string when the fit succeeded.
  std::vector<std::vector<std::string>> failures;
  /// Test ROC curve of each method's best trial (by test AUC), with the
  /// trial index; empty curve if every trial failed.
  std::vector<RocCurve> best_test_roc;
  std::vector<std::size_t> best_test_trial;
};

struct RunTrialsConfig {
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  double train_fraction = 0.5;
  bool stratified = true;
  std::size_t max_dim = 4;
};

/// Repeated shuffle-split-standardize-fit-score protocol. Trial k derives its
/// split seed from (seed, k), every method sees the same split, and scores
/// are strict AUC on train and test. Per-method failures are recorded, not
/// fatal. Fully deterministic.
TrialMatrix run_trials(const Dataset& dataset, const std::vector<MethodKind>& methods,
                       const RunTrialsConfig& config);

struct WelchResult {
  bool significant = false;
  double p_value = 1.0;
  int direction = 0;  ///< sign of mean(a) - mean(b)
  double t_statistic = 0.0;
  double degrees_of_freedom = 0.0;
};

/// Two-sided unequal-variance t-test with Welch-Satterthwaite degrees of
/// freedom. Two zero-variance samples compare by mean: equal means are not
/// significant (p = 1), distinct constant means are (p = 0).
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b, double alpha);

struct SignificanceCell {
  std::uint32_t wins = 0;
  double alpha = 0.05;
};

/// Cell (I, J) counts datasets where method I beats J significantly (positive
/// direction at level alpha), pooling each dataset's trials into one test.
struct SignificanceMatrix {
  std::vector<std::string> methods;
  double alpha = 0.05;
  std::vector<std::vector<SignificanceCell>> cells;
};

enum class Split { train, test };

SignificanceMatrix significance_matrix(const std::vector<TrialMatrix>& per_dataset, double alpha,
                                       Split split);

/// Average rank per method (rank 1 = best, ties averaged) given one score per
/// method per dataset, e.g. the per-dataset mean AUC.
std::vector<double> mean_rank(const std::vector<std::vector<double>>& scores_per_dataset);

/// Mean score per method over the successful trials of one dataset.
std::vector<double> mean_scores(const TrialMatrix& matrix, Split split);

// Report files. The writers are deterministic: identical inputs produce
// byte-identical output.
void write_trials_csv(const std::filesystem::path& path, const TrialMatrix& matrix);
void write_roc_csv(const std::filesystem::path& path, const RocCurve& curve);
void write_significance_csv(const std::filesystem::path& path, const SignificanceMatrix& train,
                            const SignificanceMatrix& test);
void write_report_json(const std::filesystem::path& path,
                       const std::vector<TrialMatrix>& per_dataset,
                       const SignificanceMatrix& train, const SignificanceMatrix& test,
                       std::uint64_t seed);

}  // namespace aucopt
