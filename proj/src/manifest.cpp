#include "claimgraph/manifest.hpp"

#include <cstdio>
#include <fstream>

#include "claimgraph/errors.hpp"

namespace claimgraph {

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001B3ULL;
    }
    if (!in) break;
  }
  char hex[32];
  std::snprintf(hex, sizeof(hex), "fnv1a64:%016llx",
                static_cast<unsigned long long>(hash));
  return hex;
}

RunManifest::RunManifest(std::string command) : command_(std::move(command)) {
  config_ = nlohmann::ordered_json::object();
  inputs_ = nlohmann::ordered_json::object();
  timings_ = nlohmann::ordered_json::object();
}

void RunManifest::set_config(std::string key, const nlohmann::json& value) {
  config_[key] = value;
}

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs_[path.string()] = file_digest(path);
}

void RunManifest::set_timing(std::string key, double milliseconds) {
  timings_[key] = milliseconds;
}

void RunManifest::write(const std::filesystem::path& path) const {
  nlohmann::ordered_json doc;
  doc["tool"] = "claimgraph";
  doc["version"] = std::string(kToolVersion);
  doc["command"] = command_;
  doc["config"] = config_;
  doc["inputs"] = inputs_;
  doc["timings"] = timings_;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace claimgraph
