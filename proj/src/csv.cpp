#include "fir/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fir {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

double parse_cell(const std::string& field, const std::string& path, std::size_t line,
                  std::size_t column) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || field.empty()) {
    throw CsvError(path + ":" + std::to_string(line) + ":" + std::to_string(column) +
                       ": expected a number, got '" + field + "'",
                   line, column);
  }
  if (!std::isfinite(value)) {
    throw CsvError(path + ":" + std::to_string(line) + ":" + std::to_string(column) +
                       ": non-finite value",
                   line, column);
  }
  return value;
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

CsvTable read_numeric_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvError(path + ": cannot open file", 0, 0);

  std::string line;
  if (!std::getline(in, line)) throw CsvError(path + ":1: missing header row", 1, 0);
  CsvTable table;
  table.header = split_fields(strip_cr(line));
  const std::size_t cols = table.header.size();

  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != cols) {
      throw CsvError(path + ":" + std::to_string(lineno) + ": expected " +
                         std::to_string(cols) + " fields, got " +
                         std::to_string(fields.size()),
                     lineno, 0);
    }
    for (std::size_t c = 0; c < cols; ++c) {
      values.push_back(parse_cell(fields[c], path, lineno, c + 1));
    }
    ++rows;
  }
  if (rows == 0) throw CsvError(path + ": no data rows", lineno, 0);

  table.data.resize(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < cols; ++c) {
      table.data(static_cast<Index>(i), static_cast<Index>(c)) = values[i * cols + c];
    }
  }
  return table;
}

void write_matrix_csv(const std::string& path, const Matrix& data,
                      const std::vector<std::string>& header) {
  if (static_cast<Index>(header.size()) != data.cols()) {
    throw std::invalid_argument("write_matrix_csv: header/column count mismatch");
  }
  std::ofstream out(path);
  if (!out) throw CsvError(path + ": cannot open file for writing", 0, 0);
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c > 0) out << ',';
    out << header[c];
  }
  out << '\n';
  for (Index i = 0; i < data.rows(); ++i) {
    for (Index c = 0; c < data.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(data(i, c));
    }
    out << '\n';
  }
  if (!out) throw CsvError(path + ": write failed", 0, 0);
}

void write_labels_csv(const std::string& path, const std::vector<bool>& labels) {
  std::ofstream out(path);
  if (!out) throw CsvError(path + ": cannot open file for writing", 0, 0);
  out << "is_outlier\n";
  for (const bool flag : labels) out << (flag ? '1' : '0') << '\n';
  if (!out) throw CsvError(path + ": write failed", 0, 0);
}

std::vector<bool> read_labels_csv(const std::string& path) {
  const CsvTable table = read_numeric_csv(path);
  if (table.data.cols() != 1) {
    throw CsvError(path + ": expected a single is_outlier column", 1, 0);
  }
  std::vector<bool> labels(static_cast<std::size_t>(table.data.rows()));
  for (Index i = 0; i < table.data.rows(); ++i) {
    labels[static_cast<std::size_t>(i)] = table.data(i, 0) != 0.0;
  }
  return labels;
}

}  // namespace fir
