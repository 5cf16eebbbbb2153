#pragma once

#include <string>
#include <vector>

#include "fir/types.hpp"

namespace fir {

/// Parse or I/O failure with a 1-based line (and column, when known)
/// already folded into the message.
class CsvError : public std::runtime_error {
public:
  CsvError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(message), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

struct CsvTable {
  std::vector<std::string> header;
  Matrix data;
};

/// Comma-separated, header row, decimal point, UTF-8. Every cell must
/// parse as a finite number.
CsvTable read_numeric_csv(const std::string& path);

/// Shortest round-trip formatting, '\n' line endings.
void write_matrix_csv(const std::string& path, const Matrix& data,
                      const std::vector<std::string>& header);

/// Single 0/1 column under the `is_outlier` header.
void write_labels_csv(const std::string& path, const std::vector<bool>& labels);
std::vector<bool> read_labels_csv(const std::string& path);

}  // namespace fir
