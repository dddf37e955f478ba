#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fdi {

inline constexpr const char* kToolVersion = "0.1.0";

/// Flat key=value record written alongside every CLI output so a run can
/// be reproduced bit-identically from its resolved configuration.
class RunManifest {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, long value);
  void set(const std::string& key, double value);
  void write(const std::string& path) const;
  std::string to_string() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// FNV-1a 64-bit digest of a file's bytes, as 16 hex digits.
std::string fnv1a_file_hex(const std::string& path);

}  // namespace fdi
