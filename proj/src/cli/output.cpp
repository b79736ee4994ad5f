#include "cli/output.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "json.hpp"

namespace qscreen::cli {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string config_line(const Table& t) {
  std::string line = "version=";
  line += kVersion;
  line += " units=dimensionless";
  for (const auto& [key, value] : t.config) {
    line += ' ';
    line += key;
    line += '=';
    line += value;
  }
  return line;
}

namespace {

std::string render_cell_csv(const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::number:
      return format_double(c.number);
    case Cell::Kind::text:
      return c.text;
    case Cell::Kind::empty:
      return {};
  }
  return {};
}

}  // namespace

std::string render_csv(const Table& t) {
  std::string out = "# config: " + config_line(t) + "\n";
  for (size_t i = 0; i < t.columns.size(); ++i) {
    if (i > 0) out += ',';
    out += t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += render_cell_csv(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Table& t) {
  nlohmann::ordered_json doc;
  doc["config"] = nlohmann::ordered_json::object();
  doc["config"]["version"] = kVersion;
  doc["config"]["units"] = "dimensionless";
  for (const auto& [key, value] : t.config) doc["config"][key] = value;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (size_t i = 0; i < row.size() && i < t.columns.size(); ++i) {
      switch (row[i].kind) {
        case Cell::Kind::number:
          rec[t.columns[i]] = row[i].number;
          break;
        case Cell::Kind::text:
          rec[t.columns[i]] = row[i].text;
          break;
        case Cell::Kind::empty:
          rec[t.columns[i]] = nullptr;
          break;
      }
    }
    doc["rows"].push_back(std::move(rec));
  }
  return doc.dump(2) + "\n";
}

std::string render(const Table& t, const std::string& format) {
  if (format == "csv") return render_csv(t);
  if (format == "json") return render_json(t);
  throw std::runtime_error("format: expected 'csv' or 'json', got '" +
                           format + "'");
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("output: cannot open '" + path + "'");
  file << content;
  if (!file) throw std::runtime_error("output: write failed for '" + path +
                                      "'");
}

}  // namespace qscreen::cli
