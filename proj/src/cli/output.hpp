#pragma once

#include <string>
#include <utility>
#include <vector>

// Deterministic table output for the command-line front end. Every table
// carries the fully resolved configuration as ordered key/value pairs; the
// CSV rendering puts it on a single leading comment line so a reader of the
// bare file can reproduce the run, and the JSON rendering mirrors the same
// fields under a "config" key next to the "rows" array.

namespace qscreen::cli {

inline constexpr const char* kVersion = "0.1.0";

// One table cell: a number (rendered with 17 significant digits), a short
// text tag (status flags and wall names), or empty for columns that do not
// apply to the row.
struct Cell {
  enum class Kind { number, text, empty };

  Kind kind = Kind::empty;
  double number = 0.0;
  std::string text;

  static Cell of(double v) { return {Kind::number, v, {}}; }
  static Cell of(std::string s) { return {Kind::text, 0.0, std::move(s)}; }
  static Cell none() { return {}; }
};

struct Table {
  // Resolved config in emission order; values are already serialized.
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// "%.17g" with the C numeric conventions: enough digits to round-trip a
// double exactly, '.' as the decimal separator (the program never installs
// a locale).
std::string format_double(double v);

// Canonical one-line serialization "key=value key=value ..." of the resolved
// config, prefixed with the library version and the units note.
std::string config_line(const Table& t);

// First line "# config: ...", second line the column names, then one line
// per row with empty cells rendered as empty fields.
std::string render_csv(const Table& t);

// {"config": {...}, "rows": [{column: value, ...}, ...]} with empty cells
// rendered as null.
std::string render_json(const Table& t);

// Renders in the requested format ("csv" or "json").
std::string render(const Table& t, const std::string& format);

// Writes content to path, or to stdout when path is empty. Throws
// std::runtime_error when the file cannot be written.
void write_output(const std::string& path, const std::string& content);

}  // namespace qscreen::cli
