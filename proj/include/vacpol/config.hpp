#pragma once
#include <string>
#include <vector>

#include "vacpol/spectral_density.hpp"

//! Run configuration shared by the CLI subcommands. Values come from a flat
//! key=value config file with [section] headers (CLI11 format); command-line
//! flags override file values.

namespace vacpol::cli {

struct RunConfig {
  // physical
  int Z = 92;
  double alpha = 0.0072973525693;
  double lambda0 = 7.58;
  int K = 8;
  int M_lambda = 5;
  double lambda_ir = 0;  //! 0 = auto gamma/M_lambda

  // grid
  double grid_a = 0;  //! 0 = auto 2/lambda0
  double grid_b = 0;  //! 0 = auto K/(2 gamma sqrt(lambda0))
  int n_points = 257;

  // uehling
  bool paper_literal = false;

  // decompose
  int max_frequencies = 12;
  double remainder_tol = 0.1;
  double q_max = 0;

  // extrapolate
  std::vector<double> lambda0_list = {5.0, 7.58};
  double learning_rate = 0.05;
  double eta_init = 2.0;

  // flow
  std::string spectrum_csv;  //! empty = bundled uranium table
  int n_intervals = 6;
  bool coulomb = false;
  int coulomb_levels = 20000;
  int n_cut = 7;

  // run
  std::string out_dir = "out";
  std::string cache_dir;  //! empty = $VACPOL_CACHE_DIR, else out_dir
  int threads = 0;
  bool keep_channels = false;
  bool no_cache = false;

  double gamma() const { return Z * alpha; }
  double lambda_ir_eff() const;
  double a_eff() const;
  double b_eff() const;
  std::string cache_dir_eff() const;
  spectral::PhysicalParams physical() const;
  void validate() const;
};

//! stable FNV-1a hash of the canonical key=value serialization
std::string config_hash(const std::string &canonical);

//! canonical serializations per stage (only the keys the stage consumes)
std::string canonical_density(const RunConfig &c);
std::string canonical_decompose(const RunConfig &c);
std::string canonical_extrapolate(const RunConfig &c);
std::string canonical_flow(const RunConfig &c);

} // namespace vacpol::cli
