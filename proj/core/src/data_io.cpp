#include "aucopt/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "aucopt/rng.hpp"

namespace aucopt {

namespace {

bool parse_double(const std::string& text, double& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t' || *(end - 1) == '\r')) --end;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end && begin != end;
}

int parse_label(double raw, std::size_t line_no) {
  if (raw == 1.0) return +1;
  if (raw == -1.0 || raw == 0.0) return -1;
  std::ostringstream msg;
  msg << "unknown label value " << raw << "; expected +1/-1 or 0/1";
  throw ParseError(msg.str(), line_no);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

Dataset read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path.string());

  std::vector<LabeledPoint> points;
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  std::size_t label_col = 0;
  bool have_layout = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells = split_csv_line(line);

    if (!have_layout) {
      columns = cells.size();
      if (columns < 2) {
        throw ParseError("dataset rows need at least one feature and a label", line_no);
      }
      label_col = columns - 1;
      bool is_header = false;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        double ignored;
        if (!parse_double(cells[c], ignored)) is_header = true;
        std::string lowered = cells[c];
        std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                       [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
        if (lowered == "label" || lowered == "y") label_col = c;
      }
      have_layout = true;
      if (is_header) continue;
    }

    if (cells.size() != columns) {
      throw ParseError("inconsistent column count: expected " + std::to_string(columns) +
                           ", found " + std::to_string(cells.size()),
                       line_no);
    }
    LabeledPoint p;
    p.coords.reserve(columns - 1);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double v;
      if (!parse_double(cells[c], v)) {
        throw ParseError("malformed number \"" + cells[c] + "\"", line_no);
      }
      if (c == label_col) {
        p.label = parse_label(v, line_no);
      } else {
        p.coords.push_back(v);
      }
    }
    points.push_back(std::move(p));
  }
  if (points.empty()) {
    throw std::runtime_error("dataset file " + path.string() + " contains no data rows");
  }
  return Dataset::from_points(std::move(points));
}

Dataset read_sparse(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path.string());

  struct SparseRow {
    int label;
    std::vector<std::pair<std::size_t, double>> entries;
  };
  std::vector<SparseRow> rows;
  std::size_t max_index = 0;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    std::stringstream ss(line);
    std::string token;
    if (!(ss >> token)) continue;
    double raw_label;
    if (!parse_double(token, raw_label)) {
      throw ParseError("malformed label \"" + token + "\"", line_no);
    }
    SparseRow row;
    row.label = parse_label(raw_label, line_no);
    while (ss >> token) {
      const std::size_t colon = token.find(':');
      if (colon == std::string::npos) {
        throw ParseError("malformed sparse entry \"" + token + "\"; expected idx:val", line_no);
      }
      std::size_t idx = 0;
      const std::string idx_text = token.substr(0, colon);
      const auto [ptr, ec] =
          std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), idx);
      if (ec != std::errc{} || ptr != idx_text.data() + idx_text.size() || idx == 0) {
        throw ParseError("malformed sparse index \"" + idx_text + "\"; indices are 1-based",
                         line_no);
      }
      double value;
      if (!parse_double(token.substr(colon + 1), value)) {
        throw ParseError("malformed sparse value in \"" + token + "\"", line_no);
      }
      row.entries.emplace_back(idx - 1, value);
      max_index = std::max(max_index, idx);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw std::runtime_error("dataset file " + path.string() + " contains no data rows");
  }
  if (max_index == 0) {
    throw std::runtime_error("dataset file " + path.string() + " has no feature entries");
  }

  std::vector<LabeledPoint> points;
  points.reserve(rows.size());
  for (SparseRow& row : rows) {
    LabeledPoint p;
    p.label = row.label;
    p.coords.assign(max_index, 0.0);
    for (const auto& [idx, value] : row.entries) p.coords[idx] = value;
    points.push_back(std::move(p));
  }
  return Dataset::from_points(std::move(points));
}

void append_full_precision(std::string& out, double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

}  // namespace

FileFormat format_from_name(const std::string& name) {
  if (name == "csv") return FileFormat::csv;
  if (name == "sparse") return FileFormat::sparse;
  throw std::invalid_argument("unknown dataset format \"" + name + "\"; expected csv or sparse");
}

Dataset read_dataset(const std::filesystem::path& path, FileFormat format) {
  return format == FileFormat::csv ? read_csv(path) : read_sparse(path);
}

void write_dataset(const std::filesystem::path& path, const Dataset& dataset, FileFormat format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset file: " + path.string());

  std::string buffer;
  auto write_points = [&](const std::vector<LabeledPoint>& points) {
    for (const LabeledPoint& p : points) {
      buffer.clear();
      if (format == FileFormat::csv) {
        for (double c : p.coords) {
          append_full_precision(buffer, c);
          buffer.push_back(',');
        }
        buffer += p.label > 0 ? "1" : "-1";
      } else {
        buffer += p.label > 0 ? "1" : "-1";
        for (std::size_t k = 0; k < p.coords.size(); ++k) {
          if (p.coords[k] == 0.0) continue;
          buffer.push_back(' ');
          buffer += std::to_string(k + 1);
          buffer.push_back(':');
          append_full_precision(buffer, p.coords[k]);
        }
      }
      buffer.push_back('\n');
      out << buffer;
    }
  };

  if (format == FileFormat::csv) {
    for (std::size_t k = 0; k < dataset.dim(); ++k) out << "x" << (k + 1) << ",";
    out << "label\n";
  }
  write_points(dataset.positives());
  write_points(dataset.negatives());
}

StandardizedPair standardize(const Dataset& train, const Dataset& test) {
  if (train.dim() != test.dim()) {
    throw std::invalid_argument("standardize: train/test dimension mismatch");
  }
  const std::size_t d = train.dim();
  const double n = static_cast<double>(train.size());

  StandardizationStats stats;
  stats.means.assign(d, 0.0);
  stats.stdevs.assign(d, 0.0);

  auto accumulate = [&](const std::vector<LabeledPoint>& points, auto&& fn) {
    for (const LabeledPoint& p : points) fn(p);
  };
  accumulate(train.positives(), [&](const LabeledPoint& p) {
    for (std::size_t k = 0; k < d; ++k) stats.means[k] += p.coords[k];
  });
  accumulate(train.negatives(), [&](const LabeledPoint& p) {
    for (std::size_t k = 0; k < d; ++k) stats.means[k] += p.coords[k];
  });
  for (double& m : stats.means) m /= n;

  auto add_sq = [&](const LabeledPoint& p) {
    for (std::size_t k = 0; k < d; ++k) {
      const double delta = p.coords[k] - stats.means[k];
      stats.stdevs[k] += delta * delta;
    }
  };
  accumulate(train.positives(), add_sq);
  accumulate(train.negatives(), add_sq);
  for (double& s : stats.stdevs) s = std::sqrt(s / n);

  auto transform = [&](const Dataset& source) {
    auto map_points = [&](const std::vector<LabeledPoint>& points) {
      std::vector<LabeledPoint> out;
      out.reserve(points.size());
      for (const LabeledPoint& p : points) {
        LabeledPoint q = p;
        for (std::size_t k = 0; k < d; ++k) {
          q.coords[k] = stats.stdevs[k] > 0.0 ? (p.coords[k] - stats.means[k]) / stats.stdevs[k]
                                              : 0.0;
        }
        out.push_back(std::move(q));
      }
      return out;
    };
    return Dataset(map_points(source.positives()), map_points(source.negatives()));
  };

  return {transform(train), transform(test), std::move(stats)};
}

SplitResult split_shuffle(const Dataset& dataset, double train_fraction, std::uint64_t seed,
                          bool stratified) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("split_shuffle: train_fraction must lie in (0, 1)");
  }

  Rng rng(seed);
  std::vector<LabeledPoint> train_points, test_points;

  auto split_class = [&](const std::vector<LabeledPoint>& points, std::size_t take) {
    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    for (std::size_t i = 0; i < order.size(); ++i) {
      (i < take ? train_points : test_points).push_back(points[order[i]]);
    }
  };

  if (stratified) {
    const std::size_t take_pos =
        static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(dataset.num_pos())));
    const std::size_t take_neg =
        static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(dataset.num_neg())));
    if (take_pos == 0 || take_pos == dataset.num_pos() || take_neg == 0 ||
        take_neg == dataset.num_neg()) {
      throw std::invalid_argument(
          "split_shuffle: stratified split would leave a class empty on one side");
    }
    split_class(dataset.positives(), take_pos);
    split_class(dataset.negatives(), take_neg);
  } else {
    std::vector<LabeledPoint> all;
    all.reserve(dataset.size());
    all.insert(all.end(), dataset.positives().begin(), dataset.positives().end());
    all.insert(all.end(), dataset.negatives().begin(), dataset.negatives().end());
    const std::size_t take =
        static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(all.size())));
    if (take == 0 || take == all.size()) {
      throw std::invalid_argument("split_shuffle: split would leave one side empty");
    }
    std::vector<std::size_t> order(all.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    for (std::size_t i = 0; i < order.size(); ++i) {
      (i < take ? train_points : test_points).push_back(all[order[i]]);
    }
  }

  return {Dataset::from_points(std::move(train_points)),
          Dataset::from_points(std::move(test_points))};
}

}  // namespace aucopt
