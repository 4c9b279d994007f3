#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace lacewalk {

/// Full-precision scientific formatting (17 significant digits) so emitted
/// tables are lossless and reruns diff byte-identically.
std::string format_full(double v);

/// CSV emitter: leading '# key=value' comment lines carry the full parameter
/// manifest, then one header row, then data rows.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::pair<std::string, std::string>>& manifest,
            const std::vector<std::string>& columns);

  void row(const std::vector<std::string>& cells);
  static std::string cell(double v) { return format_full(v); }
  static std::string cell(long long v) { return std::to_string(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }

 private:
  std::ofstream out_;
  std::size_t n_columns_;
};

}  // namespace lacewalk
