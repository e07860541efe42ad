#pragma once

#include <string>
#include <vector>

namespace latfrak::csv {

// 17 significant digits, round-trippable.
std::string num(double v);

class Table {
public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}
  void comment(const std::string& line) { comments_.push_back(line); }
  void row(std::vector<std::string> cells);
  std::string str() const;
  std::size_t size() const { return rows_.size(); }

private:
  std::vector<std::string> columns_;
  std::vector<std::string> comments_;
  std::vector<std::vector<std::string>> rows_;
};

// Writes via a temporary file in the same directory and renames it into place.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace latfrak::csv
