#include "tailwave/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>

#include "tailwave/errors.hpp"

namespace tailwave {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, std::span<const std::string> header)
    : out_(path, std::ios::binary), columns_(header.size()) {
  if (!out_) throw ConfigError("cannot open output file: " + path);
  if (header.empty()) throw ConfigError("CsvWriter: empty header");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ << ',';
    out_ << header[i];
  }
  out_ << '\n';
}

void CsvWriter::row(std::span<const double> values) {
  if (values.size() != columns_) throw ConfigError("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    out_ << format_g17(values[i]);
  }
  out_ << '\n';
  ++rows_;
}

void CsvWriter::row_cells(std::span<const std::string> cells) {
  if (cells.size() != columns_) throw ConfigError("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
  ++rows_;
}

void CsvWriter::close() {
  out_.flush();
  out_.close();
  if (!out_.good()) throw ConfigError("CsvWriter: write failed on close");
}

namespace {

void put_f64(std::ofstream& out, double v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_i64(std::ofstream& out, std::int64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

}  // namespace

void write_field_binary(const std::string& path, const Field2D& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  put_f64(out, field.dr);
  put_f64(out, field.dt);
  put_i64(out, static_cast<std::int64_t>(field.nt));
  put_i64(out, static_cast<std::int64_t>(field.nr));
  out.write(reinterpret_cast<const char*>(field.values.data()),
            static_cast<std::streamsize>(field.values.size() * sizeof(double)));
  if (!out.good()) throw ConfigError("field dump failed: " + path);
}

Field2D read_field_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open field file: " + path);
  Field2D f;
  std::int64_t nt = 0, nr = 0;
  in.read(reinterpret_cast<char*>(&f.dr), sizeof f.dr);
  in.read(reinterpret_cast<char*>(&f.dt), sizeof f.dt);
  in.read(reinterpret_cast<char*>(&nt), sizeof nt);
  in.read(reinterpret_cast<char*>(&nr), sizeof nr);
  if (!in.good() || nt < 0 || nr < 0) throw ConfigError("corrupt field file: " + path);
  f.nt = static_cast<std::size_t>(nt);
  f.nr = static_cast<std::size_t>(nr);
  f.values.resize(f.nt * f.nr);
  in.read(reinterpret_cast<char*>(f.values.data()),
          static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  if (!in.good()) throw ConfigError("corrupt field file: " + path);
  return f;
}

}  // namespace tailwave
