#include "sptsim/csv_io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace sptsim {

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string digest_hex(uint64_t d) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(d));
  return buf;
}

static std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string write_ensemble_csv(const EnsembleStats& st) {
  std::string body;
  body.reserve(st.n_samples() * st.layout.n_slots() * 48);
  for (size_t s = 0; s < st.n_samples(); ++s) {
    for (int k = 0; k < st.layout.n_slots(); ++k) {
      body += fmt(st.time[s]);
      body += ',';
      body += st.layout.names[k];
      body += ',';
      body += fmt(st.at(s, k));
      body += ',';
      body += fmt(st.err(s, k));
      body += ',';
      body += std::to_string(st.n_traj);
      body += '\n';
    }
  }

  std::string head = "# sptsim-ensemble-v1\n";
  head += "# digest=" + digest_hex(fnv1a64(body)) + "\n";
  for (auto& [k, v] : st.params.to_kv()) head += "# param " + k + "=" + v + "\n";
  head += "# dt_convention=";
  head += st.params.boundary == Boundary::Periodic ? "sweep=1/(eta+4*gamma)"
                                                   : "sweep=1/(eta+2*gamma)";
  head += "\n# columns time,observable,mean,stderr,n_traj\n";
  return head + body;
}

double LoadedEnsemble::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw std::runtime_error("ensemble csv missing param " + key);
  return std::strtod(it->second.c_str(), nullptr);
}

SeriesCurve LoadedEnsemble::curve(const std::string& observable) const {
  auto mit = mean.find(observable);
  if (mit == mean.end())
    throw std::runtime_error("ensemble csv has no observable " + observable);
  SeriesCurve c;
  c.eta = param("eta");
  c.f_e = param("f_e");
  c.L = int(param("L"));
  c.t = time;
  c.y = mit->second;
  c.yerr = sem.at(observable);
  c.label = observable;
  return c;
}

SeriesCurve LoadedEnsemble::curve_over_index(const std::string& base, size_t sample) const {
  SeriesCurve c;
  c.eta = param("eta");
  c.f_e = param("f_e");
  c.L = int(param("L"));
  c.label = base + " vs index";
  for (const auto& name : observables) {
    if (name.rfind(base + "[", 0) != 0 || name.back() != ']') continue;
    int idx = std::stoi(name.substr(base.size() + 1, name.size() - base.size() - 2));
    c.t.push_back(idx);
    c.y.push_back(mean.at(name).at(sample));
    c.yerr.push_back(sem.at(name).at(sample));
  }
  return c;
}

LoadedEnsemble read_ensemble_csv(const std::string& text) {
  LoadedEnsemble le;
  std::istringstream in(text);
  std::string line;
  std::string body;
  bool header_done = false;
  std::map<std::string, size_t> obs_index;
  std::vector<double> cur_time;

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (header_done) continue;
      if (line.rfind("# digest=", 0) == 0)
        le.digest = std::stoull(line.substr(9), nullptr, 16);
      else if (line.rfind("# param ", 0) == 0) {
        auto eq = line.find('=', 8);
        if (eq != std::string::npos)
          le.params[line.substr(8, eq - 8)] = line.substr(eq + 1);
      }
      continue;
    }
    header_done = true;
    body += line;
    body += '\n';
    // time,observable,mean,stderr,n_traj
    std::string fields[5];
    size_t pos = 0;
    for (int k = 0; k < 5; ++k) {
      size_t comma = line.find(',', pos);
      fields[k] = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      pos = comma == std::string::npos ? line.size() : comma + 1;
    }
    double t = std::strtod(fields[0].c_str(), nullptr);
    const std::string& obs = fields[1];
    if (!obs_index.count(obs)) {
      obs_index[obs] = le.observables.size();
      le.observables.push_back(obs);
    }
    if (le.time.empty() || le.time.back() != t) {
      if (le.time.empty() || t > le.time.back()) le.time.push_back(t);
    }
    le.mean[obs].push_back(std::strtod(fields[2].c_str(), nullptr));
    le.sem[obs].push_back(std::strtod(fields[3].c_str(), nullptr));
    le.n_traj = std::atoi(fields[4].c_str());
  }
  le.body_digest = fnv1a64(body);
  return le;
}

}  // namespace sptsim
