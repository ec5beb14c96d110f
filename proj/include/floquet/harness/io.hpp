#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace floquet::harness {

/// Shortest round-trip decimal form, '.' separator regardless of locale.
std::string format_double(double value);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view text);

class CsvWriter {
 public:
  CsvWriter(std::vector<std::string> columns, const std::string& config_hash, int format);

  void row(const std::vector<std::string>& fields);
  const std::string& text() const noexcept { return text_; }

 private:
  std::size_t width_;
  std::string text_;
};

std::string dump_json(const nlohmann::json& doc);

/// Writes the file atomically enough for our purposes; throws std::runtime_error.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace floquet::harness
