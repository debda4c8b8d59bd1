// Command-line harness: deterministic ensemble runs, parameter sweeps,
// mean-field and exact-generator exports, and scaling analysis.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <thread>

#include "sptsim/csv_io.hpp"
#include "sptsim/ensemble.hpp"
#include "sptsim/exact_generator.hpp"
#include "sptsim/kernel_chiral.hpp"
#include "sptsim/manifest.hpp"
#include "sptsim/meanfield.hpp"
#include "sptsim/scaling.hpp"
#include "sptsim/schedule.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sptsim;

namespace {

using KV = std::map<std::string, std::string>;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (auto& t : split(s, ',')) out.push_back(std::stod(t));
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (auto& t : split(s, ',')) out.push_back(std::stoi(t));
  return out;
}

KV read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file " + path);
  KV kv;
  std::string line;
  while (std::getline(f, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = val;
  }
  return kv;
}

// Options shared by the simulation subcommands.
struct CommonOpts {
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_dir = "out";
  std::string preset;
  std::string semantics;
  int64_t seed = -1;
  int64_t traj = -1;
  int threads = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "flat key=value config file");
    cmd->add_option("--set", sets, "override: key=value (repeatable)");
    cmd->add_option("--seed", seed, "master seed");
    cmd->add_option("--traj", traj, "trajectory count");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    cmd->add_option("--semantics", semantics, "as-published|full-channel");
    cmd->add_option("--preset", preset, "quick|paper");
  }

  KV resolve() const {
    KV kv;
    if (preset == "quick") {
      kv["L"] = "128";
      kv["n_traj"] = "1000";
      kv["t_max_sweeps"] = "2896";  // 2 L^1.5
    } else if (preset == "paper") {
      kv["L"] = "512";
      kv["n_traj"] = "20000";
      kv["t_max_sweeps"] = "23171";
    } else if (!preset.empty()) {
      throw ConfigError("unknown preset '" + preset + "' (quick|paper)");
    }
    if (!config_path.empty())
      for (auto& [k, v] : read_config_file(config_path)) kv[k] = v;
    for (auto& s : sets) {
      auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
      kv[s.substr(0, eq)] = s.substr(eq + 1);
    }
    if (seed >= 0) kv["master_seed"] = std::to_string(seed);
    if (traj >= 0) kv["n_traj"] = std::to_string(traj);
    if (!semantics.empty()) kv["semantics"] = semantics;
    return kv;
  }

  int n_threads() const {
    if (threads > 0) return threads;
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? int(hc) : 1;
  }
};

const std::set<std::string> kSimKeys = {
    "L",        "eta",          "gamma",           "f_e",
    "boundary", "mu",           "semantics",       "initial",
    "t_max_sweeps", "schedule", "points_per_decade", "measure_stride",
    "master_seed",  "n_traj"};
const std::set<std::string> kObsKeys = {"omega_ls", "record_zeta", "record_corr_e",
                                        "record_identity_diff"};

void check_keys(const KV& kv, std::set<std::string> allowed) {
  for (auto& k : kSimKeys) allowed.insert(k);
  for (auto& k : kObsKeys) allowed.insert(k);
  for (auto& [k, v] : kv)
    if (!allowed.count(k)) throw ConfigError("unknown config key '" + k + "'");
}

SimParams params_from_kv(const KV& kv) {
  SimParams p;
  auto get = [&](const std::string& k) -> const std::string* {
    auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (auto v = get("L")) p.L = std::stoi(*v);
  if (auto v = get("eta")) p.eta = std::stod(*v);
  if (auto v = get("gamma")) p.gamma = std::stod(*v);
  if (auto v = get("f_e")) p.f_e = std::stod(*v);
  if (auto v = get("boundary")) p.boundary = boundary_from_string(*v);
  if (auto v = get("mu")) p.mu = std::stod(*v);
  if (auto v = get("semantics")) p.semantics = semantics_from_string(*v);
  if (auto v = get("initial")) p.initial = initial_from_string(*v);
  if (auto v = get("t_max_sweeps")) p.t_max_sweeps = std::stoll(*v);
  if (auto v = get("schedule")) p.schedule = schedule_from_string(*v);
  if (auto v = get("points_per_decade")) p.points_per_decade = std::stoi(*v);
  if (auto v = get("measure_stride")) p.measure_stride = std::stoll(*v);
  if (auto v = get("master_seed")) p.master_seed = std::stoull(*v);
  if (auto v = get("n_traj")) p.n_traj = std::stoi(*v);
  p.validate();
  return p;
}

ObservableSet obsset_from_kv(const KV& kv, const SimParams& p) {
  ObservableSet obs = ObservableSet::defaults_for(p);
  auto get = [&](const std::string& k) -> const std::string* {
    auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (auto v = get("omega_ls"); v && *v != "auto") obs.omega_ls = parse_ints(*v);
  if (auto v = get("record_zeta")) obs.zeta = std::stoi(*v) != 0;
  if (auto v = get("record_corr_e")) obs.corr_e = std::stoi(*v) != 0;
  if (auto v = get("record_identity_diff")) obs.identity_diff = std::stoi(*v) != 0;
  return obs;
}

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string cell_name(const SimParams& p) {
  std::string n = "ensemble_L" + std::to_string(p.L) + "_eta" + fmt_g(p.eta);
  if (p.f_e != 1.0) n += "_fe" + fmt_g(p.f_e);
  if (p.boundary == Boundary::ChiralOpen) n += "_mu" + fmt_g(p.mu);
  return n + ".csv";
}

std::string write_cell(const fs::path& dir, const SimParams& p, const EnsembleStats& st,
                       int n_threads) {
  fs::create_directories(dir);
  RunManifest m;
  m.params = p;
  m.dt_convention = p.boundary == Boundary::Periodic ? "sweep=1/(eta+4*gamma)"
                                                     : "sweep=1/(eta+2*gamma)";
  m.n_threads = n_threads;
  m.wall_seconds = st.wall_seconds;
  auto path = dir / cell_name(p);
  write_output_with_manifest(path.string(), write_ensemble_csv(st), m);
  return path.string();
}

int cmd_run(const CommonOpts& common, bool chiral) {
  KV kv = common.resolve();
  check_keys(kv, {});
  if (chiral && !kv.count("boundary")) kv["boundary"] = "chiral-open";
  SimParams p = params_from_kv(kv);
  if (chiral && p.boundary != Boundary::ChiralOpen)
    throw ConfigError("the chiral subcommand requires boundary=chiral-open");
  ObservableSet obs = obsset_from_kv(kv, p);
  Schedule sched = Schedule::from_params(p);
  EnsembleStats st = run_ensemble(p, sched, obs, common.n_threads());
  auto path = write_cell(common.out_dir, p, st, common.n_threads());
  std::cout << "wrote " << path << " (" << st.n_samples() << " samples, " << st.n_traj
            << " trajectories, " << st.wall_seconds << " s)\n";
  return 0;
}

int cmd_sweep(const CommonOpts& common, const std::string& eta_list, const std::string& fe_list,
              double steady_frac, bool cell_csv) {
  KV kv = common.resolve();
  check_keys(kv, {});
  std::vector<double> etas = parse_doubles(eta_list);
  std::vector<double> fes = fe_list.empty() ? std::vector<double>{1.0} : parse_doubles(fe_list);
  if (etas.size() < 3 || fes.size() < 3)
    std::cerr << "warning: sweep grid has < 3 points on an axis\n";

  fs::create_directories(common.out_dir);
  std::string rows =
      "eta,f_e,L,n_e,n_e_err,n_d,n_d_err,omega_half,omega_half_err,zeta,zeta_err,h,h_err\n";
  for (double fe : fes)
    for (double eta : etas) {
      KV cell_kv = kv;
      cell_kv["eta"] = std::to_string(eta);
      cell_kv["f_e"] = std::to_string(fe);
      if (!cell_kv.count("record_zeta")) cell_kv["record_zeta"] = "1";
      SimParams p = params_from_kv(cell_kv);
      ObservableSet obs = obsset_from_kv(cell_kv, p);
      Schedule sched = Schedule::from_params(p);
      EnsembleStats st = run_ensemble(p, sched, obs, common.n_threads());
      if (cell_csv) write_cell(fs::path(common.out_dir) / "cells", p, st, common.n_threads());

      // Steady estimate: average of the trailing fraction of samples; the
      // error is the largest per-sample stderr in that window.
      size_t n = st.n_samples();
      size_t lo = size_t(double(n) * (1.0 - steady_frac));
      if (lo >= n) lo = n - 1;
      auto steady = [&](int slot) -> std::pair<double, double> {
        if (slot < 0) return {0.0, 0.0};
        double acc = 0, err = 0;
        for (size_t s = lo; s < n; ++s) {
          acc += st.at(s, slot);
          err = std::max(err, st.err(s, slot));
        }
        return {acc / double(n - lo), err};
      };
      int omega_half = st.layout.find("omega[" + std::to_string(p.L / 2) + "]");
      auto [ne, ne_e] = steady(st.layout.idx_n_e);
      auto [nd, nd_e] = steady(st.layout.idx_n_d);
      auto [om, om_e] = steady(omega_half);
      auto [zt, zt_e] = steady(st.layout.idx_zeta);
      auto [hh, hh_e] = steady(st.layout.idx_h);
      char buf[320];
      std::snprintf(buf, sizeof buf,
                    "%.17g,%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    eta, fe, p.L, ne, ne_e, nd, nd_e, om, om_e, zt, zt_e, hh, hh_e);
      rows += buf;
      std::cout << "cell eta=" << eta << " f_e=" << fe << " n_e=" << ne << "\n";
    }

  SimParams p0 = params_from_kv([&] {
    KV k2 = kv;
    k2["eta"] = std::to_string(etas[0]);
    k2["f_e"] = std::to_string(fes[0]);
    return k2;
  }());
  RunManifest m;
  m.params = p0;
  m.dt_convention = "sweep=1/(eta+4*gamma)";
  m.n_threads = common.n_threads();
  auto path = fs::path(common.out_dir) / "phase.csv";
  write_output_with_manifest(path.string(), "# sptsim-phase-v1\n" + rows, m);
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_meanfield(const CommonOpts& common, const std::string& eta_list,
                  const std::string& fe_list, const std::string& mu_list, bool chiral,
                  bool integrate) {
  KV kv = common.resolve();
  check_keys(kv, {});
  fs::create_directories(common.out_dir);
  std::string out;
  std::vector<double> etas = parse_doubles(eta_list);
  if (chiral) {
    out = "eta,gamma,mu,n_d_bulk,n_d_edge,xi\n";
    for (double eta : etas)
      for (double mu : parse_doubles(mu_list)) {
        KV k2 = kv;
        k2["eta"] = std::to_string(eta);
        k2["mu"] = std::to_string(mu);
        k2["boundary"] = "chiral-open";
        if (!k2.count("L")) k2["L"] = "8";
        SimParams p = params_from_kv(k2);
        MfChiral c = mf_chiral(p);
        char buf[200];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", eta, p.gamma, mu,
                      c.n_d_bulk, c.n_d_edge, c.xi);
        out += buf;
      }
  } else {
    std::vector<double> fes = fe_list.empty() ? std::vector<double>{1.0} : parse_doubles(fe_list);
    out = "eta,gamma,f_e,n_e,n_d,h,b";
    if (integrate) out += ",integrate_max_err";
    out += "\n";
    for (double fe : fes)
      for (double eta : etas) {
        KV k2 = kv;
        k2["eta"] = std::to_string(eta);
        k2["f_e"] = std::to_string(fe);
        if (!k2.count("L")) k2["L"] = "8";
        SimParams p = params_from_kv(k2);
        MeanFieldState s = mf_steady(p);
        char buf[260];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", eta, p.gamma,
                      fe, s.n_e, s.n_d, s.h, s.b);
        out += buf;
        if (integrate) {
          double t_relax = 40.0 / std::max(1e-6, std::min(p.gamma, p.gamma + p.eta));
          auto tr = mf_integrate(p, t_relax, 0.0, {}, BLedger::Adiabatic, 1 << 20);
          const MeanFieldState& f = tr.back().s;
          double err = std::max(std::abs(f.n_e - s.n_e), std::abs(f.n_d - s.n_d));
          std::snprintf(buf, sizeof buf, ",%.3e", err);
          out += buf;
        }
        out += "\n";
      }
  }
  auto path = fs::path(common.out_dir) / (chiral ? "meanfield_chiral.csv" : "meanfield.csv");
  std::ofstream f(path);
  f << out;
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_exact(const CommonOpts& common, const std::string& eta_list, const std::string& sector_s,
              int k_eigs) {
  KV kv = common.resolve();
  check_keys(kv, {});
  Sector sector = sector_s == "full" ? Sector::Full : Sector::EvenParity;
  fs::create_directories(common.out_dir);
  std::string out = "eta,L,dim,k,re,im\n";
  for (double eta : parse_doubles(eta_list)) {
    KV k2 = kv;
    k2["eta"] = std::to_string(eta);
    SimParams p = params_from_kv(k2);
    RateMatrix rm = build_generator(p, sector);
    SpectrumResult sp = spectrum(rm, k_eigs, false);
    for (int k = 0; k < sp.values.size(); ++k) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%.17g,%d,%d,%d,%.17g,%.17g\n", eta, p.L, rm.dim, k,
                    sp.values[k].real(), sp.values[k].imag());
      out += buf;
    }
    std::cout << "eta=" << eta << " dim=" << rm.dim
              << " lambda1=" << (sp.values.size() > 1 ? sp.values[1].real() : 0.0) << "\n";
  }
  auto path = fs::path(common.out_dir) / "spectrum.csv";
  std::ofstream f(path);
  f << out;
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

// Observable transforms understood by analyze: raw slot names, or
// "1-<slot>" / "0.5-<slot>" for the decaying order parameters.
SeriesCurve transform_curve(const LoadedEnsemble& le, const std::string& spec) {
  auto flip = [](SeriesCurve c, double a) {
    for (auto& v : c.y) v = a - v;
    return c;
  };
  if (spec.rfind("1-", 0) == 0) return flip(le.curve(spec.substr(2)), 1.0);
  if (spec.rfind("0.5-", 0) == 0) return flip(le.curve(spec.substr(4)), 0.5);
  return le.curve(spec);
}

int cmd_analyze(const CommonOpts& common, const std::vector<std::string>& inputs,
                const std::string& task, const std::string& observable, double eta_c,
                double delta, const std::string& model_s, double fixed_delta, bool force,
                double min_time, const std::string& report_path,
                const std::string& export_collapse) {
  std::vector<LoadedEnsemble> les;
  for (auto& path : inputs) {
    std::string reason;
    if (!force && !verify_manifest(path, &reason))
      throw ConfigError("refusing unmanifested input: " + reason + " (use --force to override)");
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    les.push_back(read_ensemble_csv(buf.str()));
  }
  if (les.empty()) throw ConfigError("analyze: no inputs");

  json report;
  report["task"] = task;
  report["observable"] = observable;

  SeriesFamily family;
  for (auto& le : les) family.push_back(transform_curve(le, observable));

  if (task == "critical") {
    CriticalFit cf = find_critical(family);
    report["eta_c"] = cf.eta_c;
    report["eta_c_err"] = cf.eta_c_err;
    report["delta"] = cf.delta;
    report["delta_err"] = cf.delta_err;
    report["slopes"] = cf.slopes;
  } else if (task == "collapse" || task == "fss") {
    if (delta == 0) throw ConfigError("analyze: --delta required");
    bool fss = task == "fss";
    if (!fss && eta_c == 0) throw ConfigError("analyze: --eta-c required for collapse");
    CollapseResult r =
        fss ? optimize_fss(family, delta) : optimize_collapse(family, delta, eta_c);
    double err = bootstrap_collapse_err(family, delta, eta_c, fss);
    report[fss ? "z" : "nu_t"] = r.exponent;
    report[fss ? "z_err" : "nu_t_err"] = err;
    report["cost"] = r.cost;
    if (!export_collapse.empty()) {
      std::string csv = "curve,x,y\n";
      for (size_t c = 0; c < family.size(); ++c) {
        const auto& cur = family[c];
        double shift = fss ? -r.exponent * std::log(double(cur.L))
                           : r.exponent * std::log(std::abs(cur.eta - eta_c));
        for (size_t i = 0; i < cur.t.size(); ++i) {
          if (cur.t[i] <= 0 || cur.y[i] <= 0) continue;
          char buf[120];
          std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", c, std::log(cur.t[i]) + shift,
                        std::log(cur.y[i]) + delta * std::log(cur.t[i]));
          csv += buf;
        }
      }
      std::ofstream f(export_collapse);
      f << csv;
    }
  } else if (task == "fit") {
    DecayModel model;
    if (model_s == "exp") model = DecayModel::Exp;
    else if (model_s == "exp-plateau") model = DecayModel::ExpPlateau;
    else if (model_s == "power-exp") model = DecayModel::PowerExp;
    else throw ConfigError("analyze: --model must be exp|exp-plateau|power-exp");
    report["fits"] = json::array();
    for (auto& cur : family) {
      std::vector<double> xs, ys, ss;
      for (size_t i = 0; i < cur.t.size(); ++i) {
        if (cur.t[i] < min_time) continue;
        xs.push_back(cur.t[i]);
        ys.push_back(cur.y[i]);
        ss.push_back(cur.yerr[i]);
      }
      FitResult fr = fit_decay(xs, ys, ss, model, fixed_delta);
      json jf;
      jf["eta"] = cur.eta;
      jf["f_e"] = cur.f_e;
      jf["L"] = cur.L;
      jf["params"] = std::vector<double>(fr.p.data(), fr.p.data() + fr.p.size());
      std::vector<double> perr;
      for (int i = 0; i < fr.p.size(); ++i) perr.push_back(std::sqrt(fr.cov(i, i)));
      jf["param_errs"] = perr;
      jf["chi2"] = fr.chi2;
      jf["n_points"] = fr.n_points;
      report["fits"].push_back(jf);
    }
  } else {
    throw ConfigError("analyze: unknown task '" + task + "'");
  }

  std::string text = report.dump(2) + "\n";
  if (report_path.empty()) {
    std::cout << text;
  } else {
    fs::create_directories(fs::path(report_path).parent_path().string().empty()
                               ? "."
                               : fs::path(report_path).parent_path().string());
    std::ofstream f(report_path);
    f << text;
    std::cout << "wrote " << report_path << "\n";
  }
  (void)common;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sptsim: heralded-noise cluster-chain population dynamics"};
  app.require_subcommand(1);

  CommonOpts run_o, sweep_o, mf_o, exact_o, an_o, chiral_o;

  auto* run = app.add_subcommand("run", "ensemble run at one parameter point");
  run_o.attach(run);

  auto* chiral = app.add_subcommand("chiral", "ensemble run of the open-boundary drift protocol");
  chiral_o.attach(chiral);

  auto* sweep = app.add_subcommand("sweep", "steady-state grid over eta and f_e");
  sweep_o.attach(sweep);
  std::string sw_eta = "0.2,0.4,0.6,0.8,1.0", sw_fe;
  double steady_frac = 0.25;
  bool cell_csv = false;
  sweep->add_option("--eta-list", sw_eta, "comma-separated eta grid");
  sweep->add_option("--fe-list", sw_fe, "comma-separated f_e grid (default 1.0)");
  sweep->add_option("--steady-frac", steady_frac, "trailing sample fraction for steady averages");
  sweep->add_flag("--cell-csv", cell_csv, "also write per-cell ensemble CSVs");

  auto* mf = app.add_subcommand("meanfield", "closed-form steady states on a grid");
  mf_o.attach(mf);
  std::string mf_eta = "0,0.25,0.5,0.75,1,1.25,1.5,1.75,2,2.5,3,3.5,4";
  std::string mf_fe = "0,0.2,0.4,0.6,0.8,1", mf_mu = "0,0.25,0.5,0.75,1";
  bool mf_chiral_flag = false, mf_integrate_flag = false;
  mf->add_option("--eta-list", mf_eta, "eta grid");
  mf->add_option("--fe-list", mf_fe, "f_e grid");
  mf->add_option("--mu-list", mf_mu, "mu grid (chiral)");
  mf->add_flag("--chiral", mf_chiral_flag, "chiral-protocol closed forms");
  mf->add_flag("--integrate", mf_integrate_flag, "cross-check with RK4 integration");

  auto* exact = app.add_subcommand("exact", "exact generator spectrum export");
  exact_o.attach(exact);
  std::string ex_eta = "0.4,0.5,0.6065,0.7,0.8", ex_sector = "even";
  int ex_k = 6;
  exact->add_option("--eta-list", ex_eta, "eta grid");
  exact->add_option("--sector", ex_sector, "even|full");
  exact->add_option("--k", ex_k, "eigenvalues to export");

  auto* an = app.add_subcommand("analyze", "scaling analysis of ensemble CSVs");
  an_o.attach(an);
  std::vector<std::string> an_inputs;
  std::string an_task = "critical", an_obs = "1-n_e", an_model = "exp", an_report,
              an_export;
  double an_eta_c = 0, an_delta = 0, an_fixed_delta = 0, an_min_time = 0;
  bool an_force = false;
  an->add_option("inputs", an_inputs, "ensemble CSV files")->required();
  an->add_option("--task", an_task, "critical|collapse|fss|fit");
  an->add_option("--observable", an_obs, "slot name, or 1-<slot> / 0.5-<slot>");
  an->add_option("--eta-c", an_eta_c, "critical point (collapse)");
  an->add_option("--delta", an_delta, "decay exponent (collapse/fss)");
  an->add_option("--model", an_model, "exp|exp-plateau|power-exp (fit)");
  an->add_option("--fixed-delta", an_fixed_delta, "fixed power-law exponent (power-exp)");
  an->add_option("--min-time", an_min_time, "drop samples before this time (fit)");
  an->add_option("--report", an_report, "write JSON report here (default stdout)");
  an->add_option("--export-collapse", an_export, "write rescaled collapse curves CSV");
  an->add_flag("--force", an_force, "accept unmanifested inputs");

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(run_o, false);
    if (chiral->parsed()) return cmd_run(chiral_o, true);
    if (sweep->parsed()) return cmd_sweep(sweep_o, sw_eta, sw_fe, steady_frac, cell_csv);
    if (mf->parsed())
      return cmd_meanfield(mf_o, mf_eta, mf_fe, mf_mu, mf_chiral_flag, mf_integrate_flag);
    if (exact->parsed()) return cmd_exact(exact_o, ex_eta, ex_sector, ex_k);
    if (an->parsed())
      return cmd_analyze(an_o, an_inputs, an_task, an_obs, an_eta_c, an_delta, an_model,
                         an_fixed_delta, an_force, an_min_time, an_report, an_export);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
