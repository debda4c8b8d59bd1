#include "sptsim/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sptsim/csv_io.hpp"

namespace sptsim {

using nlohmann::json;

std::string RunManifest::to_json() const {
  json j;
  for (auto& [k, v] : params.to_kv()) j["params"][k] = v;
  j["code_version"] = code_version;
  j["dt_convention"] = dt_convention;
  j["n_threads"] = n_threads;
  j["wall_seconds"] = wall_seconds;
  for (auto& [f, d] : output_digests) j["outputs"][f] = d;
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
  json j = json::parse(text);
  RunManifest m;
  m.code_version = j.value("code_version", "");
  m.dt_convention = j.value("dt_convention", "");
  m.n_threads = j.value("n_threads", 0);
  m.wall_seconds = j.value("wall_seconds", 0.0);
  if (j.contains("outputs"))
    for (auto& [k, v] : j["outputs"].items()) m.output_digests[k] = v.get<std::string>();
  return m;
}

std::string write_output_with_manifest(const std::string& csv_path, const std::string& csv_text,
                                       RunManifest manifest) {
  // Digest covers the data section only (lines not starting with '#').
  std::string body;
  std::istringstream in(csv_text);
  std::string line;
  while (std::getline(in, line))
    if (line.empty() || line[0] != '#') {
      body += line;
      body += '\n';
    }
  std::string digest = digest_hex(fnv1a64(body));

  std::ofstream f(csv_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + csv_path);
  f << csv_text;
  f.close();

  auto name = std::filesystem::path(csv_path).filename().string();
  manifest.output_digests[name] = digest;
  std::ofstream mf(csv_path + ".manifest.json", std::ios::binary);
  if (!mf) throw std::runtime_error("cannot write manifest for " + csv_path);
  mf << manifest.to_json();
  return digest;
}

bool verify_manifest(const std::string& csv_path, std::string* reason) {
  auto fail = [&](const std::string& r) {
    if (reason) *reason = r;
    return false;
  };
  std::ifstream mf(csv_path + ".manifest.json", std::ios::binary);
  if (!mf) return fail("missing manifest " + csv_path + ".manifest.json");
  std::stringstream mbuf;
  mbuf << mf.rdbuf();
  RunManifest m = RunManifest::from_json(mbuf.str());

  std::ifstream cf(csv_path, std::ios::binary);
  if (!cf) return fail("missing file " + csv_path);
  std::stringstream cbuf;
  cbuf << cf.rdbuf();
  std::string body;
  std::string line;
  while (std::getline(cbuf, line))
    if (line.empty() || line[0] != '#') {
      body += line;
      body += '\n';
    }
  auto name = std::filesystem::path(csv_path).filename().string();
  auto it = m.output_digests.find(name);
  if (it == m.output_digests.end()) return fail("manifest lacks digest for " + name);
  if (it->second != digest_hex(fnv1a64(body))) return fail("digest mismatch for " + name);
  return true;
}

}  // namespace sptsim
