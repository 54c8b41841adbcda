#include "proxpt/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "proxpt/errors.hpp"

namespace proxpt {

namespace {

void strip_trailing_cr(std::string& line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                           line.back() == '\t')) {
    line.pop_back();
  }
}

bool blank(const std::string& line) {
  for (char c : line) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

double parse_number(const std::string& token, long line) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw DataFormatError(
        "line " + std::to_string(line) + ": malformed number '" + token + "'",
        line);
  }
  return value;
}

struct SparseRow {
  double y = 0;
  std::vector<std::pair<int, double>> entries;
};

SparseRow parse_sparse_row(const std::string& line, long line_no, int dim) {
  std::istringstream in(line);
  std::string token;
  if (!(in >> token)) {
    throw DataFormatError("line " + std::to_string(line_no) + ": missing label",
                          line_no);
  }
  SparseRow row;
  row.y = parse_number(token, line_no);
  int prev = 0;
  while (in >> token) {
    const auto colon = token.find(':');
    if (colon == std::string::npos || colon == 0 ||
        colon + 1 == token.size()) {
      throw DataFormatError("line " + std::to_string(line_no) +
                                ": malformed entry '" + token + "'",
                            line_no);
    }
    const double idx_value = parse_number(token.substr(0, colon), line_no);
    const int idx = static_cast<int>(idx_value);
    if (idx_value != idx || idx < 1) {
      throw DataFormatError("line " + std::to_string(line_no) +
                                ": index must be a positive integer in '" +
                                token + "'",
                            line_no);
    }
    if (idx <= prev) {
      throw DataFormatError("line " + std::to_string(line_no) +
                                ": indices not increasing at '" + token + "'",
                            line_no);
    }
    if (dim > 0 && idx > dim) {
      throw DataFormatError("line " + std::to_string(line_no) + ": index " +
                                std::to_string(idx) + " out of range (dim " +
                                std::to_string(dim) + ")",
                            line_no);
    }
    row.entries.emplace_back(idx, parse_number(token.substr(colon + 1), line_no));
    prev = idx;
  }
  return row;
}

std::vector<double> parse_dense_row(const std::string& line, long line_no) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    const std::string field = comma == std::string::npos
                                  ? line.substr(start)
                                  : line.substr(start, comma - start);
    values.push_back(parse_number(field, line_no));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (values.size() < 2) {
    throw DataFormatError("line " + std::to_string(line_no) +
                              ": expected 'b,a1,...,ad' with at least one feature",
                          line_no);
  }
  return values;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Dataset parse_dataset(const std::string& path, DatasetFormat format,
                      int dim_hint) {
  std::ifstream in(path);
  if (!in) {
    throw DataFormatError("cannot open dataset file '" + path + "'", 0);
  }
  Dataset out;
  out.format = format;
  std::string line;
  long line_no = 0;
  if (format == DatasetFormat::dense) {
    std::vector<std::vector<double>> rows;
    std::size_t width = 0;
    while (std::getline(in, line)) {
      ++line_no;
      strip_trailing_cr(line);
      if (blank(line)) continue;
      auto values = parse_dense_row(line, line_no);
      if (width == 0) {
        width = values.size();
        if (dim_hint > 0 && width != static_cast<std::size_t>(dim_hint) + 1) {
          throw DataFormatError("line " + std::to_string(line_no) +
                                    ": expected " + std::to_string(dim_hint) +
                                    " features",
                                line_no);
        }
      } else if (values.size() != width) {
        throw DataFormatError("line " + std::to_string(line_no) +
                                  ": inconsistent field count",
                              line_no);
      }
      rows.push_back(std::move(values));
    }
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto d = n == 0 ? static_cast<Eigen::Index>(std::max(dim_hint, 0))
                          : static_cast<Eigen::Index>(width - 1);
    out.a.resize(n, d);
    out.b.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      out.b[i] = row[0];
      for (Eigen::Index j = 0; j < d; ++j) {
        out.a(i, j) = row[static_cast<std::size_t>(j) + 1];
      }
    }
  } else {
    std::vector<SparseRow> rows;
    int max_idx = 0;
    while (std::getline(in, line)) {
      ++line_no;
      strip_trailing_cr(line);
      if (blank(line)) continue;
      rows.push_back(parse_sparse_row(line, line_no, dim_hint));
      if (!rows.back().entries.empty()) {
        max_idx = std::max(max_idx, rows.back().entries.back().first);
      }
    }
    const int d = dim_hint > 0 ? dim_hint : max_idx;
    const auto n = static_cast<Eigen::Index>(rows.size());
    out.a = Matrix::Zero(n, d);
    out.b.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      out.b[i] = row.y;
      for (const auto& [idx, value] : row.entries) {
        out.a(i, idx - 1) = value;
      }
    }
  }
  return out;
}

void write_dataset(const std::string& path, const Dataset& dataset) {
  std::ofstream out(path);
  if (!out) {
    throw DataFormatError("cannot open '" + path + "' for writing", 0);
  }
  const auto n = dataset.size();
  const auto d = dataset.dim();
  for (Eigen::Index i = 0; i < n; ++i) {
    out << format_double(dataset.b[i]);
    if (dataset.format == DatasetFormat::dense) {
      for (Eigen::Index j = 0; j < d; ++j) {
        out << ',' << format_double(dataset.a(i, j));
      }
    } else {
      for (Eigen::Index j = 0; j < d; ++j) {
        if (dataset.a(i, j) != 0) {
          out << ' ' << (j + 1) << ':' << format_double(dataset.a(i, j));
        }
      }
    }
    out << '\n';
  }
}

Vector read_truth(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataFormatError("cannot open ground-truth file '" + path + "'", 0);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw DataFormatError("ground-truth file '" + path + "' is empty", 1);
  }
  strip_trailing_cr(line);
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    const std::string field = comma == std::string::npos
                                  ? line.substr(start)
                                  : line.substr(start, comma - start);
    values.push_back(parse_number(field, 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  Vector x(static_cast<Eigen::Index>(values.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    x[i] = values[static_cast<std::size_t>(i)];
  }
  return x;
}

void write_truth(const std::string& path, const Vector& x) {
  std::ofstream out(path);
  if (!out) {
    throw DataFormatError("cannot open '" + path + "' for writing", 0);
  }
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i > 0) out << ',';
    out << format_double(x[i]);
  }
  out << '\n';
}

}  // namespace proxpt
