#include "lacewalk/csv.hpp"

#include <cstdio>

#include "lacewalk/common.hpp"

namespace lacewalk {

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::pair<std::string, std::string>>& manifest,
                     const std::vector<std::string>& columns)
    : out_(path), n_columns_(columns.size()) {
  if (!out_) throw ValidationError("CsvWriter: cannot open " + path);
  for (const auto& [k, v] : manifest) out_ << "# " << k << "=" << v << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i)
    out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != n_columns_) throw ValidationError("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i)
    out_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
}

}  // namespace lacewalk
