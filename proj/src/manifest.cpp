#include "linerate/manifest.hpp"

#include "linerate/errors.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

namespace linerate {

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot hash missing file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return fnv1a_hex(buffer.str());
}

void RunManifest::add_input(const std::string& path) {
  inputs.emplace_back(path, hash_file(path));
}

void RunManifest::add_output(const std::string& path) {
  outputs.emplace_back(path, hash_file(path));
}

namespace {

std::string timestamp_utc() {
  std::time_t t;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"))
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  else
    t = std::time(nullptr);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void RunManifest::write(const std::string& path) const {
  nlohmann::ordered_json j;
  j["tool"] = "linerate";
  j["version"] = kToolVersion;
  j["timestamp"] = timestamp_utc();
  j["command"] = command_line;
  j["config_hash"] = config_hash;
  nlohmann::ordered_json in_obj = nlohmann::ordered_json::object();
  for (const auto& [p, h] : inputs) in_obj[p] = h;
  j["inputs"] = in_obj;
  nlohmann::ordered_json out_obj = nlohmann::ordered_json::object();
  for (const auto& [p, h] : outputs) out_obj[p] = h;
  j["outputs"] = out_obj;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write manifest: " + path);
  out << j.dump(1) << '\n';
}

}  // namespace linerate
