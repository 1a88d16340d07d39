#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace linerate {

inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a 64-bit content fingerprint (not cryptographic), 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);
std::string hash_file(const std::string& path);

// Provenance record written next to every command's outputs. The timestamp
// honors SOURCE_DATE_EPOCH so identical runs can produce identical bytes.
struct RunManifest {
  std::string command_line;
  std::string config_hash;
  std::vector<std::pair<std::string, std::string>> inputs;   // path, hash
  std::vector<std::pair<std::string, std::string>> outputs;  // path, hash

  void add_input(const std::string& path);
  void add_output(const std::string& path);
  void write(const std::string& path) const;
};

}  // namespace linerate
