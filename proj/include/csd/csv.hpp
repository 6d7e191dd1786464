#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace csd {

// Shortest round-trip form is not required; 17 significant digits always.
std::string format_double(double v);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);

  CsvWriter& cell(const std::string& s);
  CsvWriter& cell(double v);
  CsvWriter& cell(int v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(bool v);
  void end_row();

 private:
  std::ostream& out_;
  size_t columns_;
  size_t current_ = 0;
};

}  // namespace csd
