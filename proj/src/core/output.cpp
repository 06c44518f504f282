// SPDX-License-Identifier: Apache-2.0
#include "core/output.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "core/errors.hpp"

namespace ts {

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open for writing: " + tmp);
    out << content;
    out.flush();
    if (!out) throw ConfigError("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw ConfigError("rename failed: " + path);
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size())
    throw ConfigError("csv row width does not match header");
  rows_.push_back(cells);
}

std::string CsvWriter::str() const {
  std::string out;
  for (size_t i = 0; i < columns_.size(); ++i)
    out += (i ? "," : "") + columns_[i];
  out += "\n";
  for (const auto& row : rows_) {
    for (size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + row[i];
    out += "\n";
  }
  return out;
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(config_hash));
  j["config_hash"] = hash;
  j["version"] = version;
  j["command"] = command;
  j["timestamp"] = timestamp;
  j["residuals"] = residuals;
  j["files"] = files;
  return j.dump(2) + "\n";
}

}  // namespace ts
