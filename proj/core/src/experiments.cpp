#include "aucopt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "json.hpp"

#include "aucopt/baselines.hpp"
#include "aucopt/data_io.hpp"
#include "aucopt/evaluate.hpp"
#include "aucopt/rng.hpp"
#include "aucopt/solver_nd.hpp"
#include "aucopt/sweep2d.hpp"

namespace aucopt {

std::string method_name(MethodKind kind) {
  switch (kind) {
    case MethodKind::exact: return "exact";
    case MethodKind::logistic: return "logistic";
    case MethodKind::logistic_balanced: return "logistic-balanced";
    case MethodKind::pairwise_hinge: return "pairwise-hinge";
    case MethodKind::pairwise_square: return "pairwise-square";
  }
  throw std::logic_error("method_name: unreachable");
}

MethodKind method_from_name(const std::string& name) {
  if (name == "exact") return MethodKind::exact;
  if (name == "logistic") return MethodKind::logistic;
  if (name == "logistic-balanced") return MethodKind::logistic_balanced;
  if (name == "pairwise-hinge") return MethodKind::pairwise_hinge;
  if (name == "pairwise-square") return MethodKind::pairwise_square;
  throw std::invalid_argument("unknown method \"" + name + "\"");
}

std::vector<MethodKind> parse_method_list(const std::string& comma_separated) {
  std::vector<MethodKind> methods;
  std::stringstream ss(comma_separated);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) methods.push_back(method_from_name(token));
  }
  if (methods.empty()) {
    throw std::invalid_argument("empty method list");
  }
  return methods;
}

namespace {

Direction fit_method(MethodKind kind, const Dataset& train, std::uint64_t seed,
                     std::size_t max_dim) {
  switch (kind) {
    case MethodKind::exact: {
      SolveOptions options;
      options.max_dim = std::max<std::size_t>(max_dim, train.dim());
      return train.dim() == 2 ? solve_2d(train).direction : solve_nd(train, options).direction;
    }
    case MethodKind::logistic:
      return fit_logistic_cv(train, false, seed).direction;
    case MethodKind::logistic_balanced:
      return fit_logistic_cv(train, true, seed).direction;
    case MethodKind::pairwise_hinge:
      return fit_pairwise_cv(train, PairwiseLoss::hinge, seed).direction;
    case MethodKind::pairwise_square:
      return fit_pairwise_cv(train, PairwiseLoss::square, seed).direction;
  }
  throw std::logic_error("fit_method: unreachable");
}

}  // namespace

TrialMatrix run_trials(const Dataset& dataset, const std::vector<MethodKind>& methods,
                       const RunTrialsConfig& config) {
  if (methods.empty()) {
    throw std::invalid_argument("run_trials: method list is empty");
  }
  if (config.trials == 0) {
    throw std::invalid_argument("run_trials: trials must be at least 1");
  }

  TrialMatrix matrix;
  matrix.methods.reserve(methods.size());
  for (MethodKind m : methods) matrix.methods.push_back(method_name(m));
  matrix.trials = config.trials;
  matrix.train_scores.assign(config.trials, std::vector<double>(methods.size(), 0.0));
  matrix.test_scores.assign(config.trials, std::vector<double>(methods.size(), 0.0));
  matrix.failures.assign(config.trials, std::vector<std::string>(methods.size()));
  matrix.best_test_roc.assign(methods.size(), RocCurve{});
  matrix.best_test_trial.assign(methods.size(), 0);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    const std::uint64_t trial_seed = derive_seed(config.seed, trial);
    SplitResult split;
    try {
      split = split_shuffle(dataset, config.train_fraction, trial_seed, config.stratified);
    } catch (const std::exception& e) {
      for (std::size_t m = 0; m < methods.size(); ++m) {
        matrix.train_scores[trial][m] = nan;
        matrix.test_scores[trial][m] = nan;
        matrix.failures[trial][m] = std::string("split failed: ") + e.what();
      }
      continue;
    }
    const StandardizedPair standardized = standardize(split.train, split.test);

    for (std::size_t m = 0; m < methods.size(); ++m) {
      try {
        const Direction dir = fit_method(methods[m], standardized.train,
                                         derive_seed(trial_seed, m), config.max_dim);
        matrix.train_scores[trial][m] = evaluate_auc_direction(standardized.train, dir).value;
        const double test_auc = evaluate_auc_direction(standardized.test, dir).value;
        matrix.test_scores[trial][m] = test_auc;
        if (matrix.best_test_roc[m].points.empty() ||
            test_auc > matrix.test_scores[matrix.best_test_trial[m]][m]) {
          std::vector<double> pos_scores, neg_scores;
          for (const auto& p : standardized.test.positives()) pos_scores.push_back(dir.score(p.coords));
          for (const auto& q : standardized.test.negatives()) neg_scores.push_back(dir.score(q.coords));
          matrix.best_test_roc[m] = roc_points(pos_scores, neg_scores);
          matrix.best_test_trial[m] = trial;
        }
      } catch (const std::exception& e) {
        matrix.train_scores[trial][m] = nan;
        matrix.test_scores[trial][m] = nan;
        matrix.failures[trial][m] = e.what();
      }
    }
  }
  return matrix;
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b, double alpha) {
  if (a.size() < 2 || b.size() < 2) {
    throw std::invalid_argument("welch_t_test: both samples need at least 2 values");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("welch_t_test: alpha must lie in (0, 1)");
  }

  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / na;
  const double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / nb;
  // A constant sample has variance exactly zero; the summed squares would
  // pick up mean roundoff otherwise.
  auto variance = [](std::span<const double> s, double mean) {
    const bool constant = std::all_of(s.begin(), s.end(), [&](double x) { return x == s[0]; });
    if (constant) return 0.0;
    double v = 0.0;
    for (double x : s) v += (x - mean) * (x - mean);
    return v / (static_cast<double>(s.size()) - 1.0);
  };
  const double var_a = variance(a, mean_a);
  const double var_b = variance(b, mean_b);

  WelchResult result;
  const double mean_diff = mean_a - mean_b;
  result.direction = (mean_diff > 0.0) - (mean_diff < 0.0);

  const double se_sq = var_a / na + var_b / nb;
  if (se_sq == 0.0) {
    // Two constant samples: identical means are indistinguishable, distinct
    // ones are unambiguous.
    result.p_value = mean_diff == 0.0 ? 1.0 : 0.0;
    result.significant = result.p_value < alpha;
    result.t_statistic = mean_diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    result.degrees_of_freedom = na + nb - 2.0;
    return result;
  }

  result.t_statistic = mean_diff / std::sqrt(se_sq);
  const double num = se_sq * se_sq;
  const double den = (var_a / na) * (var_a / na) / (na - 1.0) +
                     (var_b / nb) * (var_b / nb) / (nb - 1.0);
  result.degrees_of_freedom = num / den;

  const boost::math::students_t dist(result.degrees_of_freedom);
  result.p_value = 2.0 * boost::math::cdf(dist, -std::abs(result.t_statistic));
  result.significant = result.p_value < alpha;
  return result;
}

std::vector<double> mean_scores(const TrialMatrix& matrix, Split split) {
  const auto& scores = split == Split::train ? matrix.train_scores : matrix.test_scores;
  std::vector<double> means(matrix.methods.size(), 0.0);
  for (std::size_t m = 0; m < matrix.methods.size(); ++m) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t t = 0; t < matrix.trials; ++t) {
      if (std::isnan(scores[t][m])) continue;
      sum += scores[t][m];
      ++count;
    }
    means[m] = count > 0 ? sum / static_cast<double>(count)
                         : std::numeric_limits<double>::quiet_NaN();
  }
  return means;
}

namespace {

std::vector<double> successful_scores(const TrialMatrix& matrix, Split split, std::size_t method) {
  const auto& scores = split == Split::train ? matrix.train_scores : matrix.test_scores;
  std::vector<double> out;
  out.reserve(matrix.trials);
  for (std::size_t t = 0; t < matrix.trials; ++t) {
    if (!std::isnan(scores[t][method])) out.push_back(scores[t][method]);
  }
  return out;
}

}  // namespace

SignificanceMatrix significance_matrix(const std::vector<TrialMatrix>& per_dataset, double alpha,
                                       Split split) {
  if (per_dataset.empty()) {
    throw std::invalid_argument("significance_matrix: no datasets");
  }
  const std::vector<std::string>& methods = per_dataset.front().methods;
  for (const TrialMatrix& m : per_dataset) {
    if (m.methods != methods) {
      throw std::invalid_argument("significance_matrix: inconsistent method lists across datasets");
    }
  }

  SignificanceMatrix matrix;
  matrix.methods = methods;
  matrix.alpha = alpha;
  matrix.cells.assign(methods.size(), std::vector<SignificanceCell>(methods.size(), {0, alpha}));

  for (const TrialMatrix& dataset_matrix : per_dataset) {
    for (std::size_t i = 0; i < methods.size(); ++i) {
      for (std::size_t j = 0; j < methods.size(); ++j) {
        if (i == j) continue;
        const std::vector<double> a = successful_scores(dataset_matrix, split, i);
        const std::vector<double> b = successful_scores(dataset_matrix, split, j);
        if (a.size() < 2 || b.size() < 2) continue;
        const WelchResult r = welch_t_test(a, b, alpha);
        if (r.significant && r.direction > 0) {
          ++matrix.cells[i][j].wins;
        }
      }
    }
  }
  return matrix;
}

std::vector<double> mean_rank(const std::vector<std::vector<double>>& scores_per_dataset) {
  if (scores_per_dataset.empty()) {
    throw std::invalid_argument("mean_rank: no datasets");
  }
  const std::size_t methods = scores_per_dataset.front().size();
  if (methods < 2) {
    throw std::invalid_argument("mean_rank: need at least two methods");
  }

  std::vector<double> rank_sum(methods, 0.0);
  for (const std::vector<double>& scores : scores_per_dataset) {
    if (scores.size() != methods) {
      throw std::invalid_argument("mean_rank: inconsistent method counts");
    }
    // Rank 1 is the highest score; tied scores share the average of the
    // ranks they cover.
    std::vector<std::size_t> order(methods);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return scores[x] > scores[y]; });
    std::size_t pos = 0;
    while (pos < methods) {
      std::size_t end = pos + 1;
      while (end < methods && scores[order[end]] == scores[order[pos]]) ++end;
      const double shared = 0.5 * static_cast<double>(pos + 1 + end);  // average of pos+1 .. end
      for (std::size_t k = pos; k < end; ++k) rank_sum[order[k]] += shared;
      pos = end;
    }
  }

  for (double& r : rank_sum) r /= static_cast<double>(scores_per_dataset.size());
  return rank_sum;
}

namespace {

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

std::string format_score(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

}  // namespace

void write_trials_csv(const std::filesystem::path& path, const TrialMatrix& matrix) {
  std::ostringstream out;
  out << "dataset,trial,method,split,auc,failure\n";
  for (std::size_t t = 0; t < matrix.trials; ++t) {
    for (std::size_t m = 0; m < matrix.methods.size(); ++m) {
      for (const char* split : {"train", "test"}) {
        const double score = split == std::string("train") ? matrix.train_scores[t][m]
                                                           : matrix.test_scores[t][m];
        out << matrix.dataset_name << "," << t << "," << matrix.methods[m] << "," << split << ","
            << format_score(score) << "," << matrix.failures[t][m] << "\n";
      }
    }
  }
  write_atomic(path, out.str());
}

void write_roc_csv(const std::filesystem::path& path, const RocCurve& curve) {
  std::ostringstream out;
  out << "fpr,tpr\n";
  out.precision(17);
  for (const RocPoint& p : curve.points) {
    out << p.fpr << "," << p.tpr << "\n";
  }
  write_atomic(path, out.str());
}

void write_significance_csv(const std::filesystem::path& path, const SignificanceMatrix& train,
                            const SignificanceMatrix& test) {
  std::ostringstream out;
  out << "method_i,method_j,train_wins,test_wins,alpha\n";
  for (std::size_t i = 0; i < train.methods.size(); ++i) {
    for (std::size_t j = 0; j < train.methods.size(); ++j) {
      if (i == j) continue;
      out << train.methods[i] << "," << train.methods[j] << "," << train.cells[i][j].wins << ","
          << test.cells[i][j].wins << "," << format_score(train.alpha) << "\n";
    }
  }
  write_atomic(path, out.str());
}

void write_report_json(const std::filesystem::path& path,
                       const std::vector<TrialMatrix>& per_dataset,
                       const SignificanceMatrix& train, const SignificanceMatrix& test,
                       std::uint64_t seed) {
  nlohmann::ordered_json report;
  report["methods"] = train.methods;
  report["alpha"] = train.alpha;
  report["seed"] = seed;

  auto matrix_to_json = [](const SignificanceMatrix& m) {
    std::vector<std::vector<std::uint32_t>> wins;
    wins.reserve(m.cells.size());
    for (const auto& row : m.cells) {
      std::vector<std::uint32_t> r;
      r.reserve(row.size());
      for (const SignificanceCell& c : row) r.push_back(c.wins);
      wins.push_back(std::move(r));
    }
    return wins;
  };
  report["significance"]["train"] = matrix_to_json(train);
  report["significance"]["test"] = matrix_to_json(test);

  std::vector<std::vector<double>> train_means, test_means;
  report["datasets"] = nlohmann::ordered_json::array();
  for (const TrialMatrix& matrix : per_dataset) {
    nlohmann::ordered_json entry;
    entry["name"] = matrix.dataset_name;
    entry["trials"] = matrix.trials;
    entry["mean_train_auc"] = mean_scores(matrix, Split::train);
    entry["mean_test_auc"] = mean_scores(matrix, Split::test);
    entry["best_test_trial"] = matrix.best_test_trial;
    std::size_t failures = 0;
    for (const auto& row : matrix.failures) {
      for (const std::string& f : row) {
        if (!f.empty()) ++failures;
      }
    }
    entry["failures"] = failures;
    report["datasets"].push_back(std::move(entry));
    train_means.push_back(mean_scores(matrix, Split::train));
    test_means.push_back(mean_scores(matrix, Split::test));
  }
  report["mean_rank"]["train"] = mean_rank(train_means);
  report["mean_rank"]["test"] = mean_rank(test_means);

  write_atomic(path, report.dump(2) + "\n");
}

}  // namespace aucopt
