#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "moyalkit/field.hpp"

namespace moyalkit::runner {

/// Failure to write an artifact after the output directory was accepted.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string sha256_hex(std::span<const unsigned char> bytes);
std::string sha256_hex(const std::string& bytes);

/// 17 significant digits, locale independent.
std::string format_csv_number(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  std::string render() const;
};

/// Little-endian float64 bytes, row-major.
std::string encode_float64(std::span<const double> values);

/// Output directory with a record of every file written into it.
class OutputDir {
 public:
  /// Creates the directory if needed and proves it writable with a probe
  /// file that is removed again. Throws ConfigError("outputs", ...).
  static OutputDir open(const std::filesystem::path& dir);

  const std::filesystem::path& path() const noexcept { return dir_; }

  /// name.f64 plus name.json (shape, axis order, grids, checksum).
  void write_array(const std::string& name, const RealField& f,
                   const std::vector<std::string>& axis_names);
  void write_csv(const std::string& file, const CsvTable& table);
  void write_json(const std::string& file, const nlohmann::json& doc);
  void write_text(const std::string& file, const std::string& body);

  /// Files written so far, in order, with sizes and checksums.
  const nlohmann::json& files() const noexcept { return files_; }

 private:
  explicit OutputDir(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path dir_;
  nlohmann::json files_ = nlohmann::json::array();
};

}  // namespace moyalkit::runner
