#include "latfrak/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <fmt/format.h>
#include <unistd.h>

#include "latfrak/error.hpp"

namespace latfrak::csv {

std::string num(double v) { return fmt::format("{:.17g}", v); }

void Table::row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size())
    throw Error("internal", fmt::format("row has {} cells, table has {} columns", cells.size(),
                                        columns_.size()));
  rows_.push_back(std::move(cells));
}

std::string Table::str() const {
  std::string out;
  for (const auto& c : comments_) out += "# " + c + "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) out += ',';
      out += cells[k];
    }
    out += '\n';
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = fmt::format("{}.tmp.{}", path, ::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("io", fmt::format("cannot open {} for writing", tmp));
    f << content;
    f.flush();
    if (!f) throw Error("io", fmt::format("write to {} failed", tmp));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("io", fmt::format("cannot move {} into place: {}", path, ec.message()));
  }
}

}  // namespace latfrak::csv
