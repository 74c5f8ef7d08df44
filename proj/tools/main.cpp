// Command line front end: exact AUC solving, reference oracles, the shuffle
// comparison harness, ROC export, hemisphere instance generation and
// verification, and runtime scaling tables.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "aucopt/data_io.hpp"
#include "aucopt/evaluate.hpp"
#include "aucopt/experiments.hpp"
#include "aucopt/hemisphere.hpp"
#include "aucopt/metrics.hpp"
#include "aucopt/oracles.hpp"
#include "aucopt/rng.hpp"
#include "aucopt/solver_nd.hpp"
#include "aucopt/sweep2d.hpp"

namespace {

using nlohmann::ordered_json;

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

void emit(const std::string& content, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << content;
  } else {
    write_atomic(output_path, content);
  }
}

unsigned default_threads() {
  if (const char* env = std::getenv("AUCOPT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

aucopt::Direction parse_direction(const std::string& text) {
  aucopt::Direction dir;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    dir.weights.push_back(std::stod(cell));
  }
  aucopt::validate_direction(dir);
  return dir;
}

ordered_json auc_to_json(const aucopt::AucValue& auc) {
  ordered_json j;
  j["satisfied_pairs"] = auc.satisfied_pairs;
  j["tied_pairs"] = auc.tied_pairs;
  j["total_pairs"] = auc.total_pairs;
  j["fraction"] = auc.fraction();
  j["value"] = auc.value;
  return j;
}

ordered_json result_to_json(const aucopt::OptResult& result) {
  ordered_json j;
  j["auc"] = auc_to_json(result.auc);
  j["direction"] = result.direction.weights;
  j["events_processed"] = result.events_processed;
  j["degenerate_pairs"] = result.degenerate_pairs;
  j["candidates_evaluated"] = result.candidates_evaluated;
  return j;
}

struct CommonInput {
  std::string input;
  std::string format = "csv";
  std::string output;
};

aucopt::Dataset load(const CommonInput& in) {
  return aucopt::read_dataset(in.input, aucopt::format_from_name(in.format));
}

int cmd_solve(const CommonInput& in, std::size_t expect_dim, std::size_t max_dim,
              unsigned threads) {
  const aucopt::Dataset dataset = load(in);
  if (expect_dim != 0 && expect_dim != dataset.dim()) {
    throw std::invalid_argument("--d " + std::to_string(expect_dim) +
                                " does not match dataset dimension " +
                                std::to_string(dataset.dim()));
  }
  aucopt::SolveOptions options;
  options.max_dim = max_dim;
  options.threads = threads;

  const aucopt::OptResult result = dataset.dim() == 2
                                       ? aucopt::solve_2d(dataset)
                                       : aucopt::solve_nd(dataset, options);
  ordered_json j;
  j["command"] = "solve";
  j["input"] = in.input;
  j["dim"] = dataset.dim();
  j["n_pos"] = dataset.num_pos();
  j["n_neg"] = dataset.num_neg();
  j.update(result_to_json(result));
  emit(j.dump(2) + "\n", in.output);
  return 0;
}

int cmd_oracle(const CommonInput& in, const std::string& method, std::size_t samples,
               std::uint64_t seed) {
  const aucopt::Dataset dataset = load(in);
  aucopt::OptResult result;
  if (method == "brute2d") {
    result = aucopt::brute_force_2d(dataset);
  } else if (method == "sample") {
    result = aucopt::sample_directions_oracle(dataset, samples, seed);
  } else if (method == "vertex3d") {
    result = aucopt::vertex_oracle_3d(dataset);
  } else {
    throw std::invalid_argument("unknown oracle \"" + method +
                                "\"; expected brute2d, sample or vertex3d");
  }
  ordered_json j;
  j["command"] = "oracle";
  j["method"] = method;
  j["input"] = in.input;
  j.update(result_to_json(result));
  emit(j.dump(2) + "\n", in.output);
  return 0;
}

int cmd_verify(const CommonInput& in, const std::string& w_text, std::uint64_t threshold) {
  const aucopt::Dataset dataset = load(in);
  const aucopt::Direction w = parse_direction(w_text);
  const bool feasible = aucopt::verify_feasibility(dataset, w, threshold);
  const aucopt::AucValue auc = aucopt::evaluate_auc_direction(dataset, w);

  ordered_json j;
  j["command"] = "verify";
  j["input"] = in.input;
  j["threshold"] = threshold;
  j["feasible"] = feasible;
  j["auc"] = auc_to_json(auc);
  emit(j.dump(2) + "\n", in.output);
  return 0;
}

int cmd_roc(const CommonInput& in, const std::string& w_text, std::size_t max_dim,
            unsigned threads) {
  const aucopt::Dataset dataset = load(in);
  aucopt::Direction w;
  if (!w_text.empty()) {
    w = parse_direction(w_text);
  } else {
    aucopt::SolveOptions options;
    options.max_dim = max_dim;
    options.threads = threads;
    w = dataset.dim() == 2 ? aucopt::solve_2d(dataset).direction
                           : aucopt::solve_nd(dataset, options).direction;
  }

  std::vector<double> pos, neg;
  for (const auto& p : dataset.positives()) pos.push_back(w.score(p.coords));
  for (const auto& q : dataset.negatives()) neg.push_back(w.score(q.coords));
  const aucopt::RocCurve curve = aucopt::roc_points(pos, neg);

  std::ostringstream out;
  out.precision(17);
  out << "fpr,tpr\n";
  for (const aucopt::RocPoint& p : curve.points) {
    out << p.fpr << "," << p.tpr << "\n";
  }
  emit(out.str(), in.output);
  return 0;
}

int cmd_gen_hemisphere(std::size_t n, std::size_t d, std::size_t m, std::uint64_t seed,
                       const std::string& prefix) {
  const aucopt::HemisphereInstance instance = aucopt::random_hemisphere_instance(n, d, m, seed);
  const auto [dataset, t] = aucopt::hemisphere_to_lao(instance);

  const std::string instance_path = prefix + "_instance.csv";
  const std::string dataset_path = prefix + "_d.csv";
  aucopt::write_hemisphere_instance(instance_path, instance);
  aucopt::write_dataset(dataset_path, dataset, aucopt::FileFormat::csv);

  ordered_json j;
  j["command"] = "gen-hemisphere";
  j["instance_file"] = instance_path;
  j["dataset_file"] = dataset_path;
  j["n"] = n;
  j["dim"] = d;
  j["threshold"] = t;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_compare(const std::vector<std::string>& inputs, const std::string& format,
                const std::string& output_dir, const aucopt::RunTrialsConfig& config,
                const std::string& methods_text, double alpha) {
  const std::vector<aucopt::MethodKind> methods = aucopt::parse_method_list(methods_text);
  std::filesystem::create_directories(output_dir);

  std::vector<aucopt::TrialMatrix> matrices;
  for (const std::string& input : inputs) {
    aucopt::Dataset dataset = aucopt::read_dataset(input, aucopt::format_from_name(format));
    aucopt::TrialMatrix matrix = aucopt::run_trials(dataset, methods, config);
    matrix.dataset_name = std::filesystem::path(input).stem().string();
    matrices.push_back(std::move(matrix));
  }

  const aucopt::SignificanceMatrix train =
      aucopt::significance_matrix(matrices, alpha, aucopt::Split::train);
  const aucopt::SignificanceMatrix test =
      aucopt::significance_matrix(matrices, alpha, aucopt::Split::test);

  const std::filesystem::path dir(output_dir);
  std::vector<std::string> written;
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    std::string name = matrices[k].dataset_name;
    for (std::size_t other = 0; other < k; ++other) {
      if (matrices[other].dataset_name == name) {
        name += "_" + std::to_string(k);
        break;
      }
    }
    const std::filesystem::path path = dir / ("trials_" + name + ".csv");
    aucopt::write_trials_csv(path, matrices[k]);
    written.push_back(path.string());
    for (std::size_t m = 0; m < matrices[k].methods.size(); ++m) {
      if (matrices[k].best_test_roc[m].points.empty()) continue;
      const std::filesystem::path roc_path =
          dir / ("roc_" + name + "_" + matrices[k].methods[m] + ".csv");
      aucopt::write_roc_csv(roc_path, matrices[k].best_test_roc[m]);
      written.push_back(roc_path.string());
    }
  }
  aucopt::write_significance_csv(dir / "significance.csv", train, test);
  written.push_back((dir / "significance.csv").string());
  aucopt::write_report_json(dir / "report.json", matrices, train, test, config.seed);
  written.push_back((dir / "report.json").string());

  for (const std::string& path : written) std::cout << path << "\n";
  return 0;
}

int cmd_bench(std::size_t dim, std::vector<std::size_t> sizes, std::size_t reps,
              std::uint64_t seed, const std::string& output, unsigned threads) {
  if (sizes.empty()) {
    sizes = dim == 2 ? std::vector<std::size_t>{256, 512, 1024} : std::vector<std::size_t>{8, 12, 16};
  }

  std::ostringstream out;
  out << "dim,n_per_class,pairs,median_seconds,reps\n";
  for (std::size_t n : sizes) {
    aucopt::Rng rng(aucopt::derive_seed(seed, n));
    std::vector<aucopt::LabeledPoint> pos, neg;
    for (std::size_t i = 0; i < n; ++i) {
      aucopt::LabeledPoint p;
      p.label = +1;
      for (std::size_t k = 0; k < dim; ++k) p.coords.push_back(rng.gaussian());
      pos.push_back(std::move(p));
      aucopt::LabeledPoint q;
      q.label = -1;
      for (std::size_t k = 0; k < dim; ++k) q.coords.push_back(rng.gaussian());
      neg.push_back(std::move(q));
    }
    const aucopt::Dataset dataset(std::move(pos), std::move(neg));

    std::vector<double> times;
    for (std::size_t r = 0; r < reps; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      if (dim == 2) {
        aucopt::solve_2d(dataset);
      } else {
        aucopt::SolveOptions options;
        options.max_dim = std::max<std::size_t>(4, dim);
        options.threads = threads;
        aucopt::solve_nd(dataset, options);
      }
      times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    std::sort(times.begin(), times.end());
    const double median = times[times.size() / 2];
    out << dim << "," << n << "," << n * n << "," << median << "," << reps << "\n";
  }
  emit(out.str(), output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact linear AUC optimization toolkit"};
  app.require_subcommand(1);

  CommonInput in;
  std::size_t expect_dim = 0;
  std::size_t max_dim = 4;
  unsigned threads = default_threads();
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd, bool with_output = true) {
    cmd->add_option("--input", in.input, "Input dataset file")->required();
    cmd->add_option("--format", in.format, "Input format: csv or sparse")
        ->check(CLI::IsMember({"csv", "sparse"}));
    if (with_output) cmd->add_option("--output", in.output, "Output file (default: stdout)");
  };

  // solve
  auto* solve = app.add_subcommand("solve", "Exactly maximize AUC over linear directions");
  add_common(solve);
  solve->add_option("--d", expect_dim, "Expected dataset dimension (checked)");
  solve->add_option("--max-dim", max_dim, "Recursion cap for d > 2");
  solve->add_option("--threads", threads, "Worker threads for the d > 2 candidate loop");

  // oracle
  std::string oracle_method = "brute2d";
  std::size_t samples = 1000;
  auto* oracle = app.add_subcommand("oracle", "Run a reference oracle optimizer");
  add_common(oracle);
  oracle->add_option("--method", oracle_method, "brute2d, sample or vertex3d")->required();
  oracle->add_option("--samples", samples, "Sample count for the sample oracle");
  oracle->add_option("--seed", seed, "Seed for the sample oracle");

  // verify
  std::string w_text;
  std::uint64_t threshold = 0;
  auto* verify = app.add_subcommand("verify", "Check pair-count feasibility of a direction");
  add_common(verify);
  verify->add_option("--w", w_text, "Direction as comma-separated weights")->required();
  verify->add_option("--t", threshold, "Pair-count threshold")->required();

  // roc
  auto* roc = app.add_subcommand("roc", "Export the ROC curve of a direction as CSV");
  add_common(roc);
  roc->add_option("--w", w_text, "Direction (default: solve for the optimum first)");
  roc->add_option("--max-dim", max_dim, "Recursion cap when solving");
  roc->add_option("--threads", threads, "Worker threads when solving");

  // gen-hemisphere
  std::size_t gen_n = 8, gen_d = 3, gen_m = 4;
  std::string prefix = "hemisphere";
  auto* gen = app.add_subcommand("gen-hemisphere",
                                 "Generate an open-hemisphere instance and its AUC dataset");
  gen->add_option("--n", gen_n, "Number of unit vectors")->required();
  gen->add_option("--d", gen_d, "Dimension")->required();
  gen->add_option("--m", gen_m, "Feasibility threshold")->required();
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_option("--output", prefix, "Output file prefix")->required();

  // compare
  std::vector<std::string> compare_inputs;
  std::string compare_format = "csv";
  std::string compare_output = "compare_out";
  std::string methods_text = "exact,logistic,logistic-balanced,pairwise-hinge,pairwise-square";
  aucopt::RunTrialsConfig trials_config;
  double alpha = 0.05;
  auto* compare = app.add_subcommand("compare", "Shuffle-trial comparison of methods");
  compare->add_option("--input", compare_inputs, "Dataset files")->required();
  compare->add_option("--format", compare_format, "Input format: csv or sparse")
      ->check(CLI::IsMember({"csv", "sparse"}));
  compare->add_option("--output", compare_output, "Output directory");
  compare->add_option("--trials", trials_config.trials, "Shuffle trials per dataset");
  compare->add_option("--seed", trials_config.seed, "Master seed");
  compare->add_option("--alpha", alpha, "Significance level");
  compare->add_option("--train-fraction", trials_config.train_fraction, "Training fraction");
  compare->add_flag("--stratified,!--no-stratified", trials_config.stratified,
                    "Preserve class ratio in splits");
  compare->add_option("--methods", methods_text, "Comma-separated method list");
  compare->add_option("--max-dim", trials_config.max_dim, "Recursion cap for the exact solver");

  // bench
  std::size_t bench_dim = 2;
  std::vector<std::size_t> bench_sizes;
  std::size_t bench_reps = 5;
  std::string bench_output;
  auto* bench = app.add_subcommand("bench", "Solve-time table across instance sizes");
  bench->add_option("--dim", bench_dim, "Dimension (2 or 3)");
  bench->add_option("--sizes", bench_sizes, "Per-class sample counts");
  bench->add_option("--reps", bench_reps, "Repetitions per size (median reported)");
  bench->add_option("--seed", seed, "Instance generator seed");
  bench->add_option("--output", bench_output, "Output file (default: stdout)");
  bench->add_option("--threads", threads, "Worker threads for d > 2");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(in, expect_dim, max_dim, threads);
    if (oracle->parsed()) return cmd_oracle(in, oracle_method, samples, seed);
    if (verify->parsed()) return cmd_verify(in, w_text, threshold);
    if (roc->parsed()) return cmd_roc(in, w_text, max_dim, threads);
    if (gen->parsed()) return cmd_gen_hemisphere(gen_n, gen_d, gen_m, seed, prefix);
    if (compare->parsed()) {
      return cmd_compare(compare_inputs, compare_format, compare_output, trials_config,
                         methods_text, alpha);
    }
    if (bench->parsed()) {
      return cmd_bench(bench_dim, bench_sizes, bench_reps, seed, bench_output, threads);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no command\n";
  return 1;
}
