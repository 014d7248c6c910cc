#pragma once

#include <string>
#include <vector>

namespace heraldsim {

inline constexpr int kSchemaVersion = 1;

// Generic results table with pre-formatted cells; the writer emits columns
// in the stored order so output layout is fixed by construction.
struct ResultTable {
  std::string name;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// Deterministic shortest round-trip formatting for doubles.
std::string format_double(double value);

// CSV: "# key=value" metadata lines, a header row, then data rows.
std::string to_csv(const ResultTable& table);
ResultTable parse_csv(const std::string& text);

// JSON with a schema_version field.
std::string to_json_text(const ResultTable& table);

// Log-log plot with error bars.
struct SvgSeries {
  std::string label;
  std::vector<double> x, y, y_low, y_high;
};
std::string to_svg_loglog(const std::string& title,
                          const std::string& x_label,
                          const std::string& y_label,
                          const std::vector<SvgSeries>& series);

// Throws std::runtime_error naming the path on failure.
void write_file(const std::string& path, const std::string& contents);

}  // namespace heraldsim
