#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace claimgraph {

inline constexpr std::string_view kToolVersion = "0.1.0";

// FNV-1a 64-bit digest of a file's bytes, rendered as "fnv1a64:<hex>".
// Strong enough to detect input drift between runs.
std::string file_digest(const std::filesystem::path& path);

// Config snapshot + input digests + timings, written alongside every
// command's output. Manifests of identical runs are identical except for
// the timings section.
class RunManifest {
 public:
  explicit RunManifest(std::string command);

  void set_config(std::string key, const nlohmann::json& value);
  void add_input(const std::filesystem::path& path);
  void set_timing(std::string key, double milliseconds);

  void write(const std::filesystem::path& path) const;

 private:
  std::string command_;
  nlohmann::ordered_json config_;
  nlohmann::ordered_json inputs_;
  nlohmann::ordered_json timings_;
};

}  // namespace claimgraph
