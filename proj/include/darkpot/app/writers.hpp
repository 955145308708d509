#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace darkpot::app {

using Json = nlohmann::ordered_json;

// 17 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_number(double v);

// Finite numbers as-is, non-finite as null.
Json json_number(double v);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  void row(const std::vector<double>& values);
  void row(const std::string& label, const std::vector<double>& values);
  void row(const std::vector<std::string>& text, const std::vector<double>& values);
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
};

void write_json(const std::filesystem::path& path, const Json& doc);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace darkpot::app
