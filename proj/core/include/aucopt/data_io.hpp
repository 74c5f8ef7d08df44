#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "aucopt/types.hpp"

namespace aucopt {

enum class FileFormat { csv, sparse };

FileFormat format_from_name(const std::string& name);

/// Parse failure with the 1-based line it occurred on.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : std::runtime_error(message + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads a labeled dataset.
///
/// csv: comma-separated numeric columns, optional header. With a header, the
/// column named "label" carries the class; otherwise the last column does.
/// Labels are +1/-1, or 0/1 (mapped to -1/+1).
///
/// sparse: "label idx:val idx:val ..." with 1-based indices; unspecified
/// entries are zero and the dimension is the largest index seen.
Dataset read_dataset(const std::filesystem::path& path, FileFormat format);

/// Full-precision writer; a write-then-read round trip reproduces every
/// coordinate bit-exactly.
void write_dataset(const std::filesystem::path& path, const Dataset& dataset, FileFormat format);

/// Per-column training statistics used to standardize both splits.
struct StandardizationStats {
  std::vector<double> means;
  std::vector<double> stdevs;
};

struct StandardizedPair {
  Dataset train;
  Dataset test;
  StandardizationStats stats;
};

/// (x - mean_train) / std_train per column, computed on the training split
/// only (population standard deviation). Zero-variance columns map to 0.
StandardizedPair standardize(const Dataset& train, const Dataset& test);

struct SplitResult {
  Dataset train;
  Dataset test;
};

/// Seeded shuffle-and-split. Deterministic for a fixed seed (see rng.hpp for
/// the pinned generator). Stratified mode keeps the class ratio within
/// rounding: each class contributes round(fraction * class size) training
/// points. Throws if a stratified split would leave a class empty on either
/// side.
SplitResult split_shuffle(const Dataset& dataset, double train_fraction, std::uint64_t seed,
                          bool stratified);

}  // namespace aucopt
