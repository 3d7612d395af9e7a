#include "moyalkit/runner/io.hpp"

#include <openssl/evp.h>

#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <memory>
#include <system_error>

#include "moyalkit/runner/config.hpp"

namespace moyalkit::runner {

namespace fs = std::filesystem;
using nlohmann::json;

std::string sha256_hex(std::span<const unsigned char> bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw OutputError("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  return sha256_hex(std::span(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size()));
}

std::string format_csv_number(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string CsvTable::render() const {
  auto cell = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  };
  std::string out;
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += cell(row[i]);
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::string encode_float64(std::span<const double> values) {
  std::string out(values.size() * 8, '\0');
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto bits = std::bit_cast<std::uint64_t>(values[i]);
    for (int b = 0; b < 8; ++b) out[8 * i + b] = static_cast<char>((bits >> (8 * b)) & 0xFF);
  }
  return out;
}

OutputDir OutputDir::open(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ConfigError("outputs", "cannot create directory " + dir.string());
  }
  const fs::path probe = dir / ".moyalkit-write-probe";
  {
    std::ofstream f(probe, std::ios::binary | std::ios::trunc);
    if (!f || !(f << 'x') || !f.flush()) {
      f.close();
      fs::remove(probe, ec);
      throw ConfigError("outputs", "directory is not writable: " + dir.string());
    }
  }
  fs::remove(probe, ec);
  return OutputDir(dir);
}

void OutputDir::write_text(const std::string& file, const std::string& body) {
  const fs::path p = dir_ / file;
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  f.write(body.data(), static_cast<std::streamsize>(body.size()));
  f.close();
  if (!f) throw OutputError("failed to write " + p.string());
  files_.push_back({{"name", file}, {"bytes", body.size()}, {"sha256", sha256_hex(body)}});
}

void OutputDir::write_json(const std::string& file, const json& doc) {
  write_text(file, doc.dump(2) + "\n");
}

void OutputDir::write_csv(const std::string& file, const CsvTable& table) {
  write_text(file, table.render());
}

void OutputDir::write_array(const std::string& name, const RealField& f,
                            const std::vector<std::string>& axis_names) {
  const std::string bytes = encode_float64(f.values());
  json shape = json::array(), grids = json::array();
  for (std::size_t a = 0; a < f.rank(); ++a) {
    const Grid1D& g = f.axis(a);
    shape.push_back(g.size());
    grids.push_back({{"axis", a < axis_names.size() ? axis_names[a] : std::to_string(a)},
                     {"n", g.size()},
                     {"half_width", g.half_width()},
                     {"step", g.step()}});
  }
  const json sidecar = {{"file", name + ".f64"},
                        {"dtype", "float64"},
                        {"byte_order", "little"},
                        {"layout", "row-major"},
                        {"shape", shape},
                        {"axis_order", axis_names},
                        {"grids", grids},
                        {"sha256", sha256_hex(bytes)}};
  write_text(name + ".f64", bytes);
  write_json(name + ".json", sidecar);
}

}  // namespace moyalkit::runner
