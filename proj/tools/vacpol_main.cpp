#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vacpol/errors.hpp"
#include "vacpol/pipeline.hpp"
#include "vacpol/version.hpp"

namespace {

using vacpol::cli::RunConfig;

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_double_list(const std::string &s) {
  std::vector<double> out;
  std::istringstream in(s);
  std::string field;
  while (std::getline(in, field, ','))
    out.push_back(std::stod(trim(field)));
  return out;
}

bool parse_bool(const std::string &s) {
  if (s == "1" || s == "true" || s == "on" || s == "yes")
    return true;
  if (s == "0" || s == "false" || s == "off" || s == "no")
    return false;
  throw vacpol::ValidationError("config: bad boolean value '" + s + "'");
}

//! key=value file with optional [section] headers; keys are global
void load_config_file(const std::string &path, RunConfig &cfg,
                      bool &file_set_intervals) {
  std::ifstream in(path);
  if (!in)
    throw vacpol::ValidationError("config: cannot open " + path);
  std::map<std::string, std::function<void(const std::string &)>> setters{
      {"Z", [&](const std::string &v) { cfg.Z = std::stoi(v); }},
      {"alpha", [&](const std::string &v) { cfg.alpha = std::stod(v); }},
      {"lambda0", [&](const std::string &v) { cfg.lambda0 = std::stod(v); }},
      {"K", [&](const std::string &v) { cfg.K = std::stoi(v); }},
      {"M_lambda",
       [&](const std::string &v) { cfg.M_lambda = std::stoi(v); }},
      {"lambda_ir",
       [&](const std::string &v) { cfg.lambda_ir = std::stod(v); }},
      {"grid_a", [&](const std::string &v) { cfg.grid_a = std::stod(v); }},
      {"grid_b", [&](const std::string &v) { cfg.grid_b = std::stod(v); }},
      {"n_points",
       [&](const std::string &v) { cfg.n_points = std::stoi(v); }},
      {"paper_literal",
       [&](const std::string &v) { cfg.paper_literal = parse_bool(v); }},
      {"max_frequencies",
       [&](const std::string &v) { cfg.max_frequencies = std::stoi(v); }},
      {"remainder_tol",
       [&](const std::string &v) { cfg.remainder_tol = std::stod(v); }},
      {"q_max", [&](const std::string &v) { cfg.q_max = std::stod(v); }},
      {"lambda0_list",
       [&](const std::string &v) { cfg.lambda0_list = parse_double_list(v); }},
      {"learning_rate",
       [&](const std::string &v) { cfg.learning_rate = std::stod(v); }},
      {"eta_init",
       [&](const std::string &v) { cfg.eta_init = std::stod(v); }},
      {"spectrum", [&](const std::string &v) { cfg.spectrum_csv = v; }},
      {"n_intervals",
       [&](const std::string &v) {
         cfg.n_intervals = std::stoi(v);
         file_set_intervals = true;
       }},
      {"coulomb",
       [&](const std::string &v) { cfg.coulomb = parse_bool(v); }},
      {"coulomb_levels",
       [&](const std::string &v) { cfg.coulomb_levels = std::stoi(v); }},
      {"n_cut", [&](const std::string &v) { cfg.n_cut = std::stoi(v); }},
      {"out_dir", [&](const std::string &v) { cfg.out_dir = v; }},
      {"cache_dir", [&](const std::string &v) { cfg.cache_dir = v; }},
      {"threads", [&](const std::string &v) { cfg.threads = std::stoi(v); }},
      {"keep_channels",
       [&](const std::string &v) { cfg.keep_channels = parse_bool(v); }},
      {"no_cache",
       [&](const std::string &v) { cfg.no_cache = parse_bool(v); }},
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';')
      continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw vacpol::ValidationError("config: malformed section at line " +
                                      std::to_string(lineno));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw vacpol::ValidationError("config: expected key=value at line " +
                                    std::to_string(lineno));
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end())
      throw vacpol::ValidationError("config: unknown key '" + key + "'");
    try {
      it->second(value);
    } catch (const vacpol::ValidationError &) {
      throw;
    } catch (const std::exception &) {
      throw vacpol::ValidationError("config: bad value for '" + key + "'");
    }
  }
}

void print_result(const char *stage, const vacpol::cli::StageResult &res) {
  std::cout << stage << (res.cache_hit ? " (cached) " : " ") << res.artifact
            << "\n";
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{std::string(vacpol::kToolName) + " " + vacpol::kVersion +
               ": staged vacuum polarization pipeline"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  RunConfig cfg;
  std::string config_path;
  app.add_option("--config", config_path, "key=value configuration file");
  app.set_version_flag("--version",
                       std::string(vacpol::kToolName) + " " + vacpol::kVersion);

  app.add_option("-Z,--charge", cfg.Z, "nuclear charge");
  app.add_option("--alpha", cfg.alpha, "fine structure constant");
  app.add_option("--lambda0", cfg.lambda0, "ultraviolet momentum cutoff");
  app.add_option("--lambda-ir", cfg.lambda_ir,
                 "infrared momentum cutoff (0 = gamma/M_lambda)");
  app.add_option("-K,--kappa-max", cfg.K, "largest |kappa| channel");
  app.add_option("--m-lambda", cfg.M_lambda,
                 "largest principal number in the bound sum");
  app.add_option("--grid-a", cfg.grid_a, "grid start (0 = 2/lambda0)");
  app.add_option("--grid-b", cfg.grid_b,
                 "grid end (0 = K/(2 gamma sqrt(lambda0)))");
  app.add_option("--n-points", cfg.n_points, "sample grid size");
  app.add_flag("--paper-literal", cfg.paper_literal,
               "use the M_x^2 = p^2(1-x) + 1 photon mass form");
  app.add_option("--max-frequencies", cfg.max_frequencies,
                 "oscillation budget of the decomposition");
  app.add_option("--remainder-tol", cfg.remainder_tol,
                 "decomposition stopping norm");
  app.add_option("--q-max", cfg.q_max,
                 "imaginary-axis probe range (0 = auto)");
  app.add_option("--lambda0-list", cfg.lambda0_list,
                 "cutoffs consumed by extrapolate")
      ->delimiter(',');
  app.add_option("--learning-rate", cfg.learning_rate,
                 "extrapolation descent step");
  app.add_option("--eta-init", cfg.eta_init, "initial decay exponent");
  app.add_option("--spectrum", cfg.spectrum_csv,
                 "spectrum CSV (empty = bundled uranium table)");
  auto *intervals_opt =
      app.add_option("--intervals", cfg.n_intervals, "flow interval count");
  app.add_flag("--coulomb", cfg.coulomb, "use the hydrogen-like spectrum");
  app.add_option("--coulomb-levels", cfg.coulomb_levels,
                 "levels of the hydrogen-like spectrum");
  app.add_option("--n-cut", cfg.n_cut, "remainder estimate level cut");
  app.add_option("--out", cfg.out_dir, "artifact directory");
  app.add_option("--cache-dir", cfg.cache_dir,
                 "extra artifact search root (default $VACPOL_CACHE_DIR)");
  app.add_option("--threads", cfg.threads,
                 "channel worker threads (0 = hardware)");
  app.add_flag("--keep-channels", cfg.keep_channels,
               "write per-channel columns into the density CSV");
  app.add_flag("--no-cache", cfg.no_cache, "recompute even if artifacts exist");

  auto *density = app.add_subcommand("density", "sample the spectral density");
  auto *decompose =
      app.add_subcommand("decompose", "split the density into basis terms");
  auto *extrapolate =
      app.add_subcommand("extrapolate", "remove the ultraviolet cutoff");
  auto *flow = app.add_subcommand("flow", "integrate the dilatation flow");
  auto *report = app.add_subcommand("report", "summarize existing artifacts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    bool intervals_given = intervals_opt->count() > 0;
    if (!config_path.empty()) {
      RunConfig file_cfg;
      bool file_set_intervals = false;
      load_config_file(config_path, file_cfg, file_set_intervals);
      // flags override file values: re-parse on top of the file baseline
      // so every flag that was passed lands again
      cfg = file_cfg;
      app.clear();
      app.parse(argc, argv);
      intervals_given = intervals_given || file_set_intervals;
    }
    if (cfg.coulomb && !intervals_given)
      cfg.n_intervals = cfg.coulomb_levels - 1;

    if (density->parsed())
      print_result("density", vacpol::cli::stage_density(cfg));
    else if (decompose->parsed())
      print_result("decompose", vacpol::cli::stage_decompose(cfg));
    else if (extrapolate->parsed())
      print_result("extrapolate", vacpol::cli::stage_extrapolate(cfg));
    else if (flow->parsed())
      print_result("flow", vacpol::cli::stage_flow(cfg));
    else if (report->parsed())
      print_result("report", vacpol::cli::stage_report(cfg));
    else {
      std::cerr << app.help();
      return 2;
    }
  } catch (const vacpol::ValidationError &e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const vacpol::NumericalError &e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
