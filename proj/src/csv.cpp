#include "semnoma/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "semnoma/errors.hpp"

namespace semnoma {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size())
    throw ArgumentError("csv: row has " + std::to_string(row.size()) +
                        " fields, header has " + std::to_string(header.size()));
  rows.push_back(std::move(row));
}

namespace {

void write_line(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << fields[i];
  }
  os << '\n';
}

}  // namespace

std::string CsvTable::to_string() const {
  std::ostringstream os;
  write_line(os, header);
  for (const auto& r : rows) write_line(os, r);
  return os.str();
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << to_string();
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace semnoma
