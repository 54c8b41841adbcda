#pragma once

#include <string>

#include "proxpt/types.hpp"

namespace proxpt {

enum class DatasetFormat { dense, sparse };

// An ordered list of observations (a_i, b_i). Row i of `a` is the feature
// vector of observation i; `b[i]` is the paired scalar (an offset for the
// linear families, a label or measurement for the quadratic ones).
struct Dataset {
  Matrix a;  // n x d
  Vector b;  // n
  DatasetFormat format = DatasetFormat::dense;

  Eigen::Index size() const { return b.size(); }
  Eigen::Index dim() const { return a.cols(); }
};

// File formats:
//   dense:  one CSV row per observation, "b,a1,...,ad"
//   sparse: one row per observation, "y idx:val idx:val ..." with 1-based,
//           strictly increasing indices; omitted entries are zero
// dim_hint fixes the feature dimension (required knowledge for sparse files
// whose trailing features never appear); 0 means infer it from the file.
// Malformed input raises DataFormatError carrying the 1-based line number.
Dataset parse_dataset(const std::string& path, DatasetFormat format,
                      int dim_hint = 0);

// Writes in the row formats above with round-trip precision.
void write_dataset(const std::string& path, const Dataset& dataset);

// Ground-truth sidecar: a single CSV row holding the planted parameter vector.
Vector read_truth(const std::string& path);
void write_truth(const std::string& path, const Vector& x);

}  // namespace proxpt
