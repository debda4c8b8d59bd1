#pragma once

#include <map>
#include <string>

#include "sptsim/params.hpp"

namespace sptsim {

inline constexpr const char* kVersion = "0.1.0";

// Sidecar record written next to every output file; analysis refuses inputs
// whose manifest is missing or whose digest disagrees, unless forced.
struct RunManifest {
  SimParams params;
  std::string code_version = kVersion;
  std::string dt_convention;
  int n_threads = 0;
  double wall_seconds = 0.0;
  std::map<std::string, std::string> output_digests;  // filename -> hex digest

  std::string to_json() const;
  static RunManifest from_json(const std::string& text);
};

// Writes <csv_path> and <csv_path>.manifest.json; returns the csv digest.
std::string write_output_with_manifest(const std::string& csv_path, const std::string& csv_text,
                                       RunManifest manifest);

// Returns true when path has a manifest whose digest matches its contents.
bool verify_manifest(const std::string& csv_path, std::string* reason = nullptr);

}  // namespace sptsim
