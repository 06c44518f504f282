// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ts {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double x);

/// Write content to path via a temp file + rename so readers never observe a
/// partial file. Throws ConfigError on I/O failure, naming the path.
void atomic_write(const std::string& path, const std::string& content);

class CsvWriter {
public:
  explicit CsvWriter(std::vector<std::string> columns);
  void add_row(const std::vector<std::string>& cells);
  std::string str() const;

private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

struct RunManifest {
  std::uint64_t config_hash = 0;
  std::string version;
  std::string command;
  std::string timestamp;
  std::map<std::string, double> residuals;
  std::vector<std::string> files;

  std::string to_json() const;
};

}  // namespace ts
