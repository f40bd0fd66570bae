#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "slitnet/errors.hpp"

namespace slitnet {

/// 17 significant digits: round-trip safe for IEEE doubles.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Comma-separated writer with a header row and LF line endings.
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path)
      : out_(path, std::ios::binary) {
    if (!out_) throw Error("cannot open " + path.string() + " for writing");
  }

  void write_header(std::span<const std::string> columns) {
    write_cells(columns);
  }

  void write_row(std::span<const double> values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_g17(v));
    write_cells(cells);
  }

  void write_row(std::span<const std::string> cells) { write_cells(cells); }

 private:
  void write_cells(std::span<const std::string> cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  std::ofstream out_;
};

}  // namespace slitnet
