#include "vacpol/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "vacpol/errors.hpp"

namespace vacpol::cli {

double RunConfig::lambda_ir_eff() const {
  return lambda_ir > 0.0 ? lambda_ir : gamma() / double(M_lambda);
}

double RunConfig::a_eff() const {
  return grid_a > 0.0 ? grid_a : 2.0 / lambda0;
}

double RunConfig::b_eff() const {
  return grid_b > 0.0 ? grid_b
                      : double(K) / (2.0 * gamma() * std::sqrt(lambda0));
}

std::string RunConfig::cache_dir_eff() const {
  if (!cache_dir.empty())
    return cache_dir;
  if (const char *env = std::getenv("VACPOL_CACHE_DIR"); env && *env)
    return env;
  return out_dir;
}

spectral::PhysicalParams RunConfig::physical() const {
  spectral::PhysicalParams p;
  p.Z = Z;
  p.alpha = alpha;
  p.lambda_ir = lambda_ir_eff();
  p.lambda0 = lambda0;
  p.K = K;
  p.M_lambda = M_lambda;
  p.a_bound = grid_a;
  p.b_bound = grid_b;
  return p;
}

void RunConfig::validate() const {
  physical().validate();
  if (n_points < 9)
    throw ValidationError("config: n_points must be at least 9");
  if (!(a_eff() > 0.0) || !(b_eff() > a_eff()))
    throw ValidationError("config: grid must satisfy 0 < a < b");
  if (max_frequencies < 0)
    throw ValidationError("config: max_frequencies must be non-negative");
  if (!(remainder_tol > 0.0))
    throw ValidationError("config: remainder_tol must be positive");
  if (q_max < 0.0)
    throw ValidationError("config: q_max must be non-negative");
  if (lambda0_list.empty())
    throw ValidationError("config: lambda0_list must not be empty");
  for (double l : lambda0_list)
    if (!(l > 0.0))
      throw ValidationError("config: lambda0_list entries must be positive");
  if (!(learning_rate > 0.0))
    throw ValidationError("config: learning_rate must be positive");
  if (n_intervals < 0)
    throw ValidationError("config: n_intervals must be non-negative");
  if (coulomb_levels < 2)
    throw ValidationError("config: coulomb_levels must be at least 2");
  if (n_cut < 1)
    throw ValidationError("config: n_cut must be at least 1");
  if (threads < 0)
    throw ValidationError("config: threads must be non-negative");
  if (out_dir.empty())
    throw ValidationError("config: out_dir must not be empty");
}

std::string config_hash(const std::string &canonical) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

std::string canonical_density(const RunConfig &c) {
  std::ostringstream s;
  s << "stage=density\n"
    << "Z=" << c.Z << "\n"
    << "alpha=" << fmt(c.alpha) << "\n"
    << "lambda0=" << fmt(c.lambda0) << "\n"
    << "lambda_ir=" << fmt(c.lambda_ir_eff()) << "\n"
    << "K=" << c.K << "\n"
    << "M_lambda=" << c.M_lambda << "\n"
    << "grid_a=" << fmt(c.a_eff()) << "\n"
    << "grid_b=" << fmt(c.b_eff()) << "\n"
    << "n_points=" << c.n_points << "\n"
    << "keep_channels=" << (c.keep_channels ? 1 : 0) << "\n";
  return s.str();
}

std::string canonical_decompose(const RunConfig &c) {
  std::ostringstream s;
  s << "stage=decompose\n"
    << canonical_density(c) << "paper_literal=" << (c.paper_literal ? 1 : 0)
    << "\n"
    << "max_frequencies=" << c.max_frequencies << "\n"
    << "remainder_tol=" << fmt(c.remainder_tol) << "\n"
    << "q_max=" << fmt(c.q_max) << "\n";
  return s.str();
}

std::string canonical_extrapolate(const RunConfig &c) {
  std::ostringstream s;
  s << "stage=extrapolate\n";
  for (double l : c.lambda0_list) {
    RunConfig per = c;
    per.lambda0 = l;
    s << "decompose[" << fmt(l) << "]=" << config_hash(canonical_decompose(per))
      << "\n";
  }
  s << "learning_rate=" << fmt(c.learning_rate) << "\n"
    << "eta_init=" << fmt(c.eta_init) << "\n";
  return s.str();
}

std::string canonical_flow(const RunConfig &c) {
  std::ostringstream s;
  s << "stage=flow\n"
    << "Z=" << c.Z << "\n"
    << "alpha=" << fmt(c.alpha) << "\n"
    << "spectrum=" << (c.coulomb ? "<coulomb>" : c.spectrum_csv) << "\n"
    << "n_intervals=" << c.n_intervals << "\n"
    << "coulomb=" << (c.coulomb ? 1 : 0) << "\n"
    << "coulomb_levels=" << c.coulomb_levels << "\n"
    << "n_cut=" << c.n_cut << "\n";
  return s.str();
}

} // namespace vacpol::cli
