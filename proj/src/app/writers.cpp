#include "darkpot/app/writers.hpp"

#include <cmath>

#include <fmt/format.h>

#include "darkpot/app/config.hpp"

namespace darkpot::app {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

Json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), out_(open_for_write(path)), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    out_ << (i ? "," : "") << header[i];
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw IoError("CSV row width mismatch in " + path_.string());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out_ << (i ? "," : "") << format_number(values[i]);
  }
  out_ << '\n';
}

void CsvWriter::row(const std::string& label, const std::vector<double>& values) {
  row(std::vector<std::string>{label}, values);
}

void CsvWriter::row(const std::vector<std::string>& text, const std::vector<double>& values) {
  if (text.size() + values.size() != columns_) throw IoError("CSV row width mismatch in " + path_.string());
  for (std::size_t i = 0; i < text.size(); ++i) out_ << (i ? "," : "") << text[i];
  for (double v : values) out_ << ',' << format_number(v);
  out_ << '\n';
}

void CsvWriter::close() {
  out_.flush();
  if (!out_) throw IoError("write failed for " + path_.string());
  out_.close();
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out = open_for_write(path);
  out << text;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace darkpot::app
