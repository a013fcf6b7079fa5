#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace semnoma {

/// 12 significant digits, shortest of fixed/scientific ("%.12g").
std::string format_number(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string to_string() const;
  void write(const std::filesystem::path& path) const;  // throws Error on IO failure
};

}  // namespace semnoma
