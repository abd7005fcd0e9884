#pragma once

#include <string>
#include <vector>

namespace cantor {

inline constexpr const char* kArtifactVersion = "cantordyn 0.1.0";

struct CheckRow {
  std::string name;
  std::string bound;     // expected bound, human-readable
  double measured = 0.0;
  bool pass = false;
  std::string note;
};

/// Deterministic check report: no timestamps, stable formatting, so equal
/// (config, seed) pairs produce byte-identical files.
struct Report {
  std::string title;
  std::string config_echo;  // canonical config serialization
  std::vector<CheckRow> rows;

  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }
  void add(std::string name, std::string bound, double measured, bool pass,
           std::string note = "") {
    rows.push_back({std::move(name), std::move(bound), measured, pass, std::move(note)});
  }
  /// Stable sort by row name (used when aggregating suites).
  void sort_rows();
  std::string to_csv() const;
};

std::string format_double(double v);

/// Writes content to path atomically (temp file + rename).
void write_atomic(const std::string& path, const std::string& content);

}  // namespace cantor
