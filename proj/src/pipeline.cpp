#include "vacpol/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "vacpol/decompose.hpp"
#include "vacpol/errors.hpp"
#include "vacpol/extrapolate.hpp"
#include "vacpol/flow.hpp"
#include "vacpol/uehling.hpp"
#include "vacpol/version.hpp"

namespace vacpol::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<fs::path> search_roots(const RunConfig &cfg) {
  std::vector<fs::path> roots{fs::path(cfg.out_dir)};
  fs::path cache(cfg.cache_dir_eff());
  if (cache != roots.front())
    roots.push_back(cache);
  return roots;
}

//! first root holding every named file, honoring no_cache
fs::path find_cached(const RunConfig &cfg,
                     const std::vector<std::string> &names) {
  if (cfg.no_cache)
    return {};
  for (const fs::path &root : search_roots(cfg)) {
    bool all = true;
    for (const std::string &n : names)
      if (!fs::exists(root / n)) {
        all = false;
        break;
      }
    if (all)
      return root;
  }
  return {};
}

//! locate one upstream artifact regardless of no_cache
fs::path find_upstream(const RunConfig &cfg, const std::string &name) {
  for (const fs::path &root : search_roots(cfg))
    if (fs::exists(root / name))
      return root / name;
  return {};
}

void write_text(const fs::path &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ValidationError("cannot write " + path.string());
  out << content;
}

void write_json(const fs::path &path, const json &j) {
  write_text(path, j.dump(2) + "\n");
}

json read_json(const fs::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot read " + path.string());
  return json::parse(in);
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};

Csv read_csv(const fs::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot read " + path.string());
  Csv csv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#')
      continue;
    std::istringstream row(line);
    std::string field;
    if (csv.header.empty()) {
      while (std::getline(row, field, ','))
        csv.header.push_back(field);
      csv.columns.resize(csv.header.size());
      continue;
    }
    std::size_t i = 0;
    while (std::getline(row, field, ',')) {
      if (i >= csv.columns.size())
        throw ValidationError("ragged CSV row in " + path.string());
      csv.columns[i++].push_back(std::stod(field));
    }
  }
  if (csv.header.empty())
    throw ValidationError("empty CSV " + path.string());
  return csv;
}

std::string csv_banner(const std::string &hash) {
  return std::string("# ") + kToolName + " " + kVersion + " config " + hash +
         "\n";
}

json meta(const std::string &stage, const std::string &hash) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["stage"] = stage;
  j["config_hash"] = hash;
  return j;
}

} // namespace

StageResult stage_density(const RunConfig &cfg) {
  cfg.validate();
  const std::string hash = config_hash(canonical_density(cfg));
  const std::string csv_name = "density_" + hash + ".csv";
  const std::string side_name = "density_" + hash + ".json";

  if (fs::path root = find_cached(cfg, {csv_name, side_name}); !root.empty())
    return {(root / csv_name).string(), (root / side_name).string(), true};

  fs::create_directories(cfg.out_dir);
  const spectral::PhysicalParams params = cfg.physical();
  const std::vector<double> grid =
      spectral::uniform_grid(cfg.a_eff(), cfg.b_eff(), cfg.n_points);
  const spectral::SampledDensity density = spectral::assemble_density(
      params, grid, {}, cfg.threads, cfg.keep_channels);

  std::ostringstream out;
  out << csv_banner(hash) << "x,y";
  for (const auto &ch : density.channels)
    out << ",minus_" << ch.kappa << ",plus_" << ch.kappa << ",bound_"
        << ch.kappa;
  out << "\n";
  for (std::size_t i = 0; i < density.x.size(); ++i) {
    out << fmt(density.x[i]) << "," << fmt(density.y[i]);
    for (const auto &ch : density.channels)
      out << "," << fmt(ch.y_minus[i]) << "," << fmt(ch.y_plus[i]) << ","
          << fmt(ch.y_bound[i]);
    out << "\n";
  }
  const fs::path csv_path = fs::path(cfg.out_dir) / csv_name;
  write_text(csv_path, out.str());

  json side = meta("density", hash);
  side["artifact"] = csv_name;
  side["Z"] = cfg.Z;
  side["alpha"] = cfg.alpha;
  side["gamma"] = cfg.gamma();
  side["lambda0"] = cfg.lambda0;
  side["lambda_ir"] = cfg.lambda_ir_eff();
  side["K"] = cfg.K;
  side["M_lambda"] = cfg.M_lambda;
  side["a"] = cfg.a_eff();
  side["b"] = cfg.b_eff();
  side["n_points"] = cfg.n_points;
  side["keep_channels"] = cfg.keep_channels;
  const fs::path side_path = fs::path(cfg.out_dir) / side_name;
  write_json(side_path, side);
  return {csv_path.string(), side_path.string(), false};
}

StageResult stage_decompose(const RunConfig &cfg) {
  cfg.validate();
  const std::string hash = config_hash(canonical_decompose(cfg));
  const std::string name = "decompose_" + hash + ".json";
  if (fs::path root = find_cached(cfg, {name}); !root.empty())
    return {(root / name).string(), (root / name).string(), true};

  const std::string density_name =
      "density_" + config_hash(canonical_density(cfg)) + ".csv";
  const fs::path density_path = find_upstream(cfg, density_name);
  if (density_path.empty())
    throw ValidationError("decompose: missing upstream artifact " +
                          density_name + "; run the density stage first");

  const Csv csv = read_csv(density_path);
  spectral::SampledDensity density;
  density.params = cfg.physical();
  density.x = csv.columns.at(0);
  density.y = csv.columns.at(1);

  decomp::DecomposeOptions opts;
  opts.max_frequencies = cfg.max_frequencies;
  opts.remainder_tol = cfg.remainder_tol;
  opts.q_max = cfg.q_max;
  opts.gamma = cfg.gamma();
  const decomp::Decomposition dec = decomp::decompose(density, opts);

  fs::create_directories(cfg.out_dir);
  json j = meta("decompose", hash);
  j["density_artifact"] = density_name;
  j["a"] = density.x.front();
  j["b"] = density.x.back();
  j["gamma"] = cfg.gamma();
  j["lambda0"] = cfg.lambda0;
  j["lambda_ir"] = cfg.lambda_ir_eff();
  j["c1"] = dec.c1;
  j["c2"] = dec.c2;
  j["w1"] = dec.w1;
  j["w5"] = dec.w5;
  j["modes"] = json::array();
  for (const auto &m : dec.modes)
    j["modes"].push_back(
        {{"omega", m.omega}, {"c_cos", m.c_cos}, {"c_sin", m.c_sin}});
  j["remainder_norm"] = dec.remainder_norm;
  j["oscillation_norm"] = dec.oscillation_norm;
  j["fit_iterations"] = dec.fit_iterations;
  j["lls_residual_history"] = dec.lls_residual_history;
  const fs::path path = fs::path(cfg.out_dir) / name;
  write_json(path, j);
  return {path.string(), path.string(), false};
}

StageResult stage_extrapolate(const RunConfig &cfg) {
  cfg.validate();
  const std::string hash = config_hash(canonical_extrapolate(cfg));
  const std::string name = "extrapolate_" + hash + ".json";
  if (fs::path root = find_cached(cfg, {name}); !root.empty())
    return {(root / name).string(), (root / name).string(), true};

  std::vector<fitw5::W5Sample> samples;
  json inputs = json::array();
  for (double l : cfg.lambda0_list) {
    RunConfig per = cfg;
    per.lambda0 = l;
    const std::string dec_name =
        "decompose_" + config_hash(canonical_decompose(per)) + ".json";
    const fs::path dec_path = find_upstream(cfg, dec_name);
    if (dec_path.empty())
      throw ValidationError("extrapolate: missing upstream artifact " +
                            dec_name + " for lambda0=" + fmt(l) +
                            "; run the decompose stage at that lambda0 first");
    const json dec = read_json(dec_path);
    samples.push_back(
        {per.lambda_ir_eff(), l, dec.at("w5").get<double>()});
    inputs.push_back(dec_name);
  }

  fitw5::ExtrapolateOptions opts;
  opts.learning_rate = cfg.learning_rate;
  opts.eta_init = cfg.eta_init;
  const fitw5::ExtrapolationResult res = fitw5::extrapolate(samples, opts);

  fs::create_directories(cfg.out_dir);
  json j = meta("extrapolate", hash);
  j["inputs"] = inputs;
  j["samples"] = json::array();
  for (const auto &s : samples)
    j["samples"].push_back(
        {{"lambda_ir", s.lambda_ir}, {"lambda0", s.lambda0}, {"w5", s.w5}});
  j["lambda_ir"] = res.lambda_ir;
  j["w5_infinity"] = res.w5_infinity;
  j["beta"] = res.beta;
  j["eta"] = res.eta;
  j["grad_norm"] = res.grad_norm;
  j["iterations"] = res.iterations;
  j["flat_direction"] = res.flat_direction;
  const fs::path path = fs::path(cfg.out_dir) / name;
  write_json(path, j);
  return {path.string(), path.string(), false};
}

StageResult stage_flow(const RunConfig &cfg) {
  cfg.validate();
  const std::string hash = config_hash(canonical_flow(cfg));
  const std::string name = "flow_" + hash + ".json";
  const std::string traj_name = "flow_" + hash + "_trajectory.csv";
  if (fs::path root = find_cached(cfg, {name, traj_name}); !root.empty())
    return {(root / name).string(), (root / name).string(), true};

  std::string source;
  flow::SpectrumTable spectrum;
  if (cfg.coulomb) {
    spectrum = flow::coulomb_spectrum(cfg.gamma(), cfg.coulomb_levels);
    source = "<coulomb>";
  } else if (!cfg.spectrum_csv.empty()) {
    spectrum = flow::load_spectrum_csv(cfg.spectrum_csv);
    source = cfg.spectrum_csv;
  } else {
    source = std::string(VACPOL_DATA_DIR) + "/uranium_spectrum.csv";
    spectrum = flow::load_spectrum_csv(source);
  }

  const int points_per_interval = cfg.n_intervals > 64 ? 1 : 16;
  const fitw5::PiecewiseW5 profile = fitw5::builtin_w5_profile();
  const flow::FlowResult res = flow::integrate_flow(
      profile, spectrum, cfg.gamma(), cfg.n_intervals, points_per_interval);
  const double rho1 = flow::density(res.nu5_final, 1.0);
  const double tail = flow::remainder_estimate(profile, cfg.Z, cfg.n_cut);

  fs::create_directories(cfg.out_dir);
  std::ostringstream traj;
  traj << csv_banner(hash) << "omega,x,nu5\n";
  for (const auto &pt : res.trajectory)
    traj << fmt(pt.omega) << "," << fmt(pt.x) << "," << fmt(pt.nu5) << "\n";
  const fs::path traj_path = fs::path(cfg.out_dir) / traj_name;
  write_text(traj_path, traj.str());

  json j = meta("flow", hash);
  j["spectrum_source"] = source;
  j["Z"] = cfg.Z;
  j["gamma"] = cfg.gamma();
  j["n_intervals"] = res.n_intervals;
  j["points_per_interval"] = points_per_interval;
  j["nu5_initial"] = res.nu5_initial;
  j["nu5_final"] = res.nu5_final;
  j["density_r1"] = rho1;
  j["n_cut"] = cfg.n_cut;
  j["remainder_estimate"] = tail;
  j["trajectory_csv"] = traj_name;
  const fs::path path = fs::path(cfg.out_dir) / name;
  write_json(path, j);
  return {path.string(), path.string(), false};
}

namespace {

//! artifact JSONs of one stage across the search roots, name-sorted
std::vector<fs::path> collect_stage(const RunConfig &cfg,
                                    const std::string &prefix) {
  std::vector<std::string> names;
  std::vector<fs::path> found;
  for (const fs::path &root : search_roots(cfg)) {
    if (!fs::is_directory(root))
      continue;
    for (const auto &entry : fs::directory_iterator(root)) {
      const std::string n = entry.path().filename().string();
      if (n.rfind(prefix, 0) == 0 && n.size() > 5 &&
          n.substr(n.size() - 5) == ".json" &&
          std::find(names.begin(), names.end(), n) == names.end()) {
        names.push_back(n);
        found.push_back(entry.path());
      }
    }
  }
  std::sort(found.begin(), found.end(),
            [](const fs::path &a, const fs::path &b) {
              return a.filename().string() < b.filename().string();
            });
  return found;
}

std::string pad(const std::string &s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string brief(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

} // namespace

StageResult stage_report(const RunConfig &cfg) {
  cfg.validate();
  const std::string hash = config_hash(canonical_density(cfg) +
                                       canonical_decompose(cfg) +
                                       canonical_extrapolate(cfg) +
                                       canonical_flow(cfg));
  const std::string txt_name = "report_" + hash + ".txt";
  const std::string side_name = "report_" + hash + ".json";
  const std::string panels_name = "report_" + hash + "_panels.csv";
  const std::string flows_name = "report_" + hash + "_flows.csv";
  fs::create_directories(cfg.out_dir);

  const std::vector<fs::path> flow_files = collect_stage(cfg, "flow_");
  const std::vector<fs::path> dec_files = collect_stage(cfg, "decompose_");
  const std::vector<fs::path> ext_files = collect_stage(cfg, "extrapolate_");
  if (flow_files.empty() && dec_files.empty() && ext_files.empty())
    throw ValidationError("report: no artifacts under " + cfg.out_dir +
                          "; run the flow, decompose, or extrapolate stage "
                          "first");

  std::ostringstream txt;
  txt << kToolName << " " << kVersion << " report\nconfig " << hash << "\n";
  json side = meta("report", hash);
  json inputs = json::array();

  if (!flow_files.empty()) {
    std::vector<json> runs;
    for (const fs::path &p : flow_files) {
      runs.push_back(read_json(p));
      inputs.push_back(p.filename().string());
    }
    const std::size_t w = 22;
    txt << "\n== flow ==\n" << pad("quantity", w);
    for (const json &r : runs)
      txt << pad(r.at("config_hash").get<std::string>(), w);
    txt << "\n" << pad("source", w);
    for (const json &r : runs) {
      std::string src = r.at("spectrum_source").get<std::string>();
      txt << pad(fs::path(src).filename().string(), w);
    }
    const auto row = [&](const char *label, const char *key) {
      txt << "\n" << pad(label, w);
      for (const json &r : runs)
        txt << pad(brief(r.at(key).get<double>()), w);
    };
    row("nu5(x=1)", "nu5_initial");
    row("nu5(final)", "nu5_final");
    row("density(r=1)", "density_r1");
    row("remainder/Z", "remainder_estimate");
    txt << "\n" << pad("nu5 - remainder/Z", w);
    for (const json &r : runs)
      txt << pad(brief(r.at("nu5_final").get<double>() -
                       r.at("remainder_estimate").get<double>()),
                 w);
    txt << "\n";

    std::ostringstream flows;
    flows << csv_banner(hash) << "run,omega,x,nu5,w5\n";
    const fitw5::PiecewiseW5 profile = fitw5::builtin_w5_profile();
    for (const json &r : runs) {
      const fs::path traj_path =
          find_upstream(cfg, r.at("trajectory_csv").get<std::string>());
      if (traj_path.empty())
        continue;
      const Csv traj = read_csv(traj_path);
      const std::string run = r.at("config_hash").get<std::string>();
      for (std::size_t i = 0; i < traj.columns.at(0).size(); ++i) {
        const double x = traj.columns.at(1)[i];
        flows << run << "," << fmt(traj.columns.at(0)[i]) << "," << fmt(x)
              << "," << fmt(traj.columns.at(2)[i]) << ","
              << fmt(fitw5::eval_w5(profile, std::min(x, 1.0))) << "\n";
      }
    }
    write_text(fs::path(cfg.out_dir) / flows_name, flows.str());
    side["flows_csv"] = flows_name;
  }

  if (!dec_files.empty()) {
    std::ostringstream panels;
    panels << csv_banner(hash)
           << "run,x,y,linear,uehling,one_over_x,one_over_x5,oscillation,"
              "remainder\n";
    for (const fs::path &p : dec_files) {
      const json d = read_json(p);
      inputs.push_back(p.filename().string());
      txt << "\n== decomposition " << d.at("config_hash").get<std::string>()
          << " ==\n";
      txt << "lambda0      " << brief(d.at("lambda0").get<double>()) << "\n";
      txt << "c1           " << brief(d.at("c1").get<double>()) << "\n";
      txt << "c2           " << brief(d.at("c2").get<double>()) << "\n";
      txt << "w1           " << brief(d.at("w1").get<double>()) << "\n";
      txt << "w5           " << brief(d.at("w5").get<double>()) << "\n";
      txt << "modes        " << d.at("modes").size() << "\n";
      txt << "remainder    " << brief(d.at("remainder_norm").get<double>())
          << "\n";
      txt << "oscillation  " << brief(d.at("oscillation_norm").get<double>())
          << "\n";

      const fs::path density_path =
          find_upstream(cfg, d.at("density_artifact").get<std::string>());
      if (density_path.empty())
        continue;
      const Csv density = read_csv(density_path);
      const std::string run = d.at("config_hash").get<std::string>();
      const double gamma = d.at("gamma").get<double>();
      const double c1 = d.at("c1").get<double>();
      const double w1 = d.at("w1").get<double>();
      const double w5 = d.at("w5").get<double>();
      for (std::size_t i = 0; i < density.columns.at(0).size(); ++i) {
        const double x = density.columns.at(0)[i];
        const double y = density.columns.at(1)[i];
        const double lin = c1 * x;
        const double ueh = gamma > 0.0 ? uehling::u_position(x, gamma) : 0.0;
        double osc = 0.0;
        for (const json &m : d.at("modes"))
          osc += m.at("c_cos").get<double>() * std::cos(m.at("omega").get<double>() * x) +
                 m.at("c_sin").get<double>() * std::sin(m.at("omega").get<double>() * x);
        const double inv1 = w1 / x;
        const double inv5 = w5 / std::pow(x, 5);
        const double rem = y - lin - ueh - inv1 - inv5 - osc;
        panels << run << "," << fmt(x) << "," << fmt(y) << "," << fmt(lin)
               << "," << fmt(ueh) << "," << fmt(inv1) << "," << fmt(inv5)
               << "," << fmt(osc) << "," << fmt(rem) << "\n";
      }
    }
    write_text(fs::path(cfg.out_dir) / panels_name, panels.str());
    side["panels_csv"] = panels_name;
  }

  for (const fs::path &p : ext_files) {
    const json e = read_json(p);
    inputs.push_back(p.filename().string());
    txt << "\n== extrapolation " << e.at("config_hash").get<std::string>()
        << " ==\n";
    txt << "beta         " << brief(e.at("beta").get<double>()) << "\n";
    txt << "eta          " << brief(e.at("eta").get<double>()) << "\n";
    txt << "flat         " << (e.at("flat_direction").get<bool>() ? "yes" : "no")
        << "\n";
    const auto &lams = e.at("lambda_ir");
    const auto &w5s = e.at("w5_infinity");
    for (std::size_t i = 0; i < lams.size(); ++i)
      txt << "w5_inf(" << brief(lams[i].get<double>())
          << ") = " << brief(w5s[i].get<double>()) << "\n";
  }

  const fs::path txt_path = fs::path(cfg.out_dir) / txt_name;
  write_text(txt_path, txt.str());
  side["inputs"] = inputs;
  side["artifact"] = txt_name;
  const fs::path side_path = fs::path(cfg.out_dir) / side_name;
  write_json(side_path, side);
  return {txt_path.string(), side_path.string(), false};
}

} // namespace vacpol::cli
