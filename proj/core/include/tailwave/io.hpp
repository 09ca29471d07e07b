#pragma once

#include <cstddef>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "tailwave/evolve.hpp"

namespace tailwave {

// Shortest exact decimal of a double (printf %.17g); round-trips bit-exactly
// through strtod, so CSV reruns are byte-identical.
std::string format_g17(double x);

// Line-oriented CSV with a fixed numeric schema and '\n' line ends.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::span<const std::string> header);
  void row(std::span<const double> values);
  // Pre-formatted cells, for schemas with non-numeric columns.
  void row_cells(std::span<const std::string> cells);
  std::size_t rows() const { return rows_; }
  void close();

 private:
  std::ofstream out_;
  std::size_t columns_ = 0;
  std::size_t rows_ = 0;
};

// Flat little-endian field dump: header dr, dt (f64), nt, nr (i64), then
// nt*nr row-major f64 values.
void write_field_binary(const std::string& path, const Field2D& field);
Field2D read_field_binary(const std::string& path);

}  // namespace tailwave
