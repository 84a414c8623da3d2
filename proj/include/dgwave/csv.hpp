#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgwave {

/// Comma-separated output with a header row; doubles are written with 17
/// significant digits so they round-trip exactly.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::initializer_list<std::string> header)
      : CsvWriter(path, std::vector<std::string>(header)) {}

  CsvWriter(const std::string& path, const std::vector<std::string>& header) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    out_.open(path);
    if (!out_) throw std::runtime_error("cannot open " + path + " for writing");
    out_.precision(std::numeric_limits<double>::max_digits10);
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
  }

  template <typename... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((out_ << (first ? "" : ",") << fields, first = false), ...);
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

}  // namespace dgwave
