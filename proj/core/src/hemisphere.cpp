#include "aucopt/hemisphere.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "aucopt/rng.hpp"

namespace aucopt {

void validate_hemisphere(const HemisphereInstance& instance) {
  if (instance.points.empty()) {
    throw std::invalid_argument("hemisphere: instance has no points");
  }
  if (instance.threshold > instance.points.size()) {
    throw std::invalid_argument("hemisphere: threshold exceeds the number of points");
  }
  const std::size_t d = instance.points.front().size();
  for (const auto& s : instance.points) {
    if (s.size() != d) {
      throw std::invalid_argument("hemisphere: inconsistent point dimensions");
    }
    double norm_sq = 0.0;
    for (double c : s) {
      if (!std::isfinite(c)) throw std::invalid_argument("hemisphere: non-finite coordinate");
      norm_sq += c * c;
    }
    if (std::abs(std::sqrt(norm_sq) - 1.0) > 1e-9) {
      throw std::invalid_argument("hemisphere: point is not unit-norm");
    }
  }
}

std::pair<Dataset, std::uint64_t> hemisphere_to_lao(const HemisphereInstance& instance) {
  const std::vector<double> origin(instance.dim(), 0.0);
  return hemisphere_to_lao(instance, origin);
}

std::pair<Dataset, std::uint64_t> hemisphere_to_lao(const HemisphereInstance& instance,
                                                    std::span<const double> anchor) {
  validate_hemisphere(instance);
  const std::size_t d = instance.dim();
  if (anchor.size() != d) {
    throw std::invalid_argument("hemisphere_to_lao: anchor dimension mismatch");
  }

  std::vector<LabeledPoint> positives;
  positives.reserve(instance.points.size());
  for (const auto& s : instance.points) {
    LabeledPoint p;
    p.label = +1;
    p.coords.resize(d);
    for (std::size_t k = 0; k < d; ++k) p.coords[k] = s[k] + anchor[k];
    positives.push_back(std::move(p));
  }
  LabeledPoint negative;
  negative.label = -1;
  negative.coords.assign(anchor.begin(), anchor.end());

  return {Dataset(std::move(positives), {std::move(negative)}),
          static_cast<std::uint64_t>(instance.threshold)};
}

std::uint64_t hemisphere_count(const HemisphereInstance& instance, const Direction& w) {
  if (w.dim() != instance.dim()) {
    throw std::invalid_argument("hemisphere_count: direction dimension mismatch");
  }
  std::uint64_t count = 0;
  for (const auto& s : instance.points) {
    if (w.score(s) > 0.0) ++count;
  }
  return count;
}

bool verify_feasibility(const Dataset& dataset, const Direction& w, std::uint64_t t) {
  validate_direction(w);
  if (w.dim() != dataset.dim()) {
    throw std::invalid_argument("verify_feasibility: direction dimension mismatch");
  }
  if (t == 0) return true;

  std::uint64_t counter = 0;
  for (const LabeledPoint& p : dataset.positives()) {
    const double sp = w.score(p.coords);
    for (const LabeledPoint& q : dataset.negatives()) {
      if (sp > w.score(q.coords)) {
        if (++counter >= t) return true;
      }
    }
  }
  return false;
}

HemisphereInstance read_hemisphere_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open hemisphere instance file: " + path.string());
  }

  HemisphereInstance instance;
  std::string line;
  std::size_t line_no = 0;
  bool have_threshold = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!have_threshold) {
      if (cells.size() != 2 || cells[0] != "threshold") {
        throw std::runtime_error("hemisphere instance line " + std::to_string(line_no) +
                                 ": expected \"threshold,<m>\"");
      }
      instance.threshold = std::stoull(cells[1]);
      have_threshold = true;
      continue;
    }
    std::vector<double> point;
    point.reserve(cells.size());
    for (const std::string& c : cells) {
      try {
        point.push_back(std::stod(c));
      } catch (const std::exception&) {
        throw std::runtime_error("hemisphere instance line " + std::to_string(line_no) +
                                 ": bad coordinate \"" + c + "\"");
      }
    }
    instance.points.push_back(std::move(point));
  }
  if (!have_threshold) {
    throw std::runtime_error("hemisphere instance file " + path.string() + ": missing threshold line");
  }
  validate_hemisphere(instance);
  return instance;
}

void write_hemisphere_instance(const std::filesystem::path& path,
                               const HemisphereInstance& instance) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write hemisphere instance file: " + path.string());
  }
  out.precision(17);
  out << "threshold," << instance.threshold << "\n";
  for (const auto& s : instance.points) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k) out << ",";
      out << s[k];
    }
    out << "\n";
  }
}

HemisphereInstance random_hemisphere_instance(std::size_t n, std::size_t d, std::size_t m,
                                              std::uint64_t seed) {
  if (n == 0 || d == 0) {
    throw std::invalid_argument("random_hemisphere_instance: n and d must be positive");
  }
  Rng rng(seed);
  HemisphereInstance instance;
  instance.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    instance.points.push_back(rng.unit_vector(d));
  }
  instance.threshold = std::min(std::max<std::size_t>(m, 1), n);
  return instance;
}

}  // namespace aucopt
