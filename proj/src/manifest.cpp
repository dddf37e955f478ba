#include "fdi/manifest.hpp"

#include "fdi/image_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fdi {

void RunManifest::set(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
}

void RunManifest::set(const std::string& key, long value) {
  entries_.emplace_back(key, std::to_string(value));
}

void RunManifest::set(const std::string& key, double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  entries_.emplace_back(key, buf);
}

std::string RunManifest::to_string() const {
  std::ostringstream out;
  for (const auto& [k, v] : entries_) out << k << "=" << v << "\n";
  return out.str();
}

void RunManifest::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << to_string();
  if (!out) throw IoError("write failed: " + path);
}

std::string fnv1a_file_hex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ull;
  char ch;
  while (in.get(ch)) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace fdi
