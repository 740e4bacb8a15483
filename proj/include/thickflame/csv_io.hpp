#ifndef THICKFLAME_CSV_IO_HPP
#define THICKFLAME_CSV_IO_HPP

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "thickflame/errors.hpp"

namespace thickflame {

// Fixed 17-significant-digit formatting: outputs are byte-identical across
// runs of the same configuration.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// SHA-1 of a git-style blob ("blob <len>\0<content>"), used to fingerprint
// configurations in run manifests.
inline std::string git_blob_sha1(const std::string& content) {
  std::string msg = "blob " + std::to_string(content.size());
  msg.push_back('\0');
  msg += content;

  uint32_t h[5] = {0x67452301u, 0xEFCDAB89u, 0x98BADCFEu, 0x10325476u,
                   0xC3D2E1F0u};
  const uint64_t ml = msg.size() * 8ull;
  msg.push_back('\x80');
  while (msg.size() % 64 != 56) msg.push_back('\0');
  for (int i = 7; i >= 0; --i)
    msg.push_back(static_cast<char>((ml >> (8 * i)) & 0xff));

  auto rol = [](uint32_t v, int s) { return (v << s) | (v >> (32 - s)); };
  for (size_t chunk = 0; chunk < msg.size(); chunk += 64) {
    uint32_t w[80];
    for (int i = 0; i < 16; ++i) {
      w[i] = 0;
      for (int b = 0; b < 4; ++b)
        w[i] = (w[i] << 8) | static_cast<uint8_t>(msg[chunk + 4 * i + b]);
    }
    for (int i = 16; i < 80; ++i)
      w[i] = rol(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);
    uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4];
    for (int i = 0; i < 80; ++i) {
      uint32_t f, k;
      if (i < 20) { f = (b & c) | (~b & d); k = 0x5A827999u; }
      else if (i < 40) { f = b ^ c ^ d; k = 0x6ED9EBA1u; }
      else if (i < 60) { f = (b & c) | (b & d) | (c & d); k = 0x8F1BBCDCu; }
      else { f = b ^ c ^ d; k = 0xCA62C1D6u; }
      const uint32_t t = rol(a, 5) + f + e + k + w[i];
      e = d; d = c; c = rol(b, 30); b = a; a = t;
    }
    h[0] += a; h[1] += b; h[2] += c; h[3] += d; h[4] += e;
  }
  char out[41];
  std::snprintf(out, sizeof out, "%08x%08x%08x%08x%08x", h[0], h[1], h[2],
                h[3], h[4]);
  return out;
}

// CSV file with '#'-prefixed manifest lines followed by a header row.
class CsvWriter {
public:
  CsvWriter(const std::filesystem::path& path,
            const std::vector<std::string>& columns)
      : path_(path), columns_(columns) {}

  void manifest(const std::string& key, const std::string& value) {
    manifest_.push_back(key + "=" + value);
  }
  void manifest(const std::string& key, double value) {
    manifest(key, format_g17(value));
  }
  void manifest(const std::string& key, int value) {
    manifest(key, std::to_string(value));
  }

  void row(const std::vector<double>& values) {
    if (values.size() != columns_.size())
      throw validation_error("csv row width mismatch for " + path_.string());
    rows_.push_back(values);
  }

  void write() const {
    std::filesystem::create_directories(path_.parent_path());
    std::ofstream os(path_);
    if (!os) throw validation_error("cannot open " + path_.string());
    for (const auto& m : manifest_) os << "# " << m << "\n";
    for (size_t i = 0; i < columns_.size(); ++i)
      os << columns_[i] << (i + 1 < columns_.size() ? "," : "\n");
    for (const auto& r : rows_) {
      for (size_t i = 0; i < r.size(); ++i)
        os << format_g17(r[i]) << (i + 1 < r.size() ? "," : "\n");
    }
  }

private:
  std::filesystem::path path_;
  std::vector<std::string> columns_;
  std::vector<std::string> manifest_;
  std::vector<std::vector<double>> rows_;
};

}  // namespace thickflame

#endif
