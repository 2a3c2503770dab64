#include "vacpol/flow.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "vacpol/errors.hpp"

namespace vacpol::flow {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

void SpectrumTable::validate() const {
  if (p.empty())
    throw ValidationError("spectrum: empty table");
  double prev = 1.0;
  for (double v : p) {
    if (!(v > 0.0 && v < 1.0))
      throw ValidationError("spectrum: binding momenta must lie in (0, 1)");
    if (!(v < prev))
      throw ValidationError("spectrum: binding momenta must decrease with n");
    prev = v;
  }
}

SpectrumTable load_spectrum_csv(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("spectrum: cannot open " + path);
  SpectrumTable table;
  std::string line;
  std::size_t expected = 1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#')
      continue;
    std::istringstream row(line);
    std::string n_field, p_field;
    if (!std::getline(row, n_field, ',') || !std::getline(row, p_field))
      throw ValidationError("spectrum: malformed row '" + line + "'");
    if (n_field == "n")
      continue;
    std::size_t n = 0;
    double pv = 0.0;
    try {
      n = std::stoul(n_field);
      pv = std::stod(p_field);
    } catch (const std::exception &) {
      throw ValidationError("spectrum: malformed row '" + line + "'");
    }
    if (n != expected)
      throw ValidationError("spectrum: levels must be consecutive from n=1");
    table.p.push_back(pv);
    ++expected;
  }
  table.validate();
  return table;
}

SpectrumTable coulomb_spectrum(double gamma, int levels) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw ValidationError("coulomb_spectrum: gamma must lie in (0, 1)");
  if (levels < 1)
    throw ValidationError("coulomb_spectrum: need at least one level");
  SpectrumTable table;
  table.p.reserve(std::size_t(levels));
  for (int n = 1; n <= levels; ++n)
    table.p.push_back(gamma / double(n));
  table.validate();
  return table;
}

FlowResult integrate_flow(const fitw5::PiecewiseW5 &w5,
                          const SpectrumTable &spectrum, double gamma,
                          int n_intervals, int points_per_interval) {
  w5.validate();
  spectrum.validate();
  if (!(gamma > 0.0))
    throw ValidationError("integrate_flow: gamma must be positive");
  if (n_intervals < 0)
    throw ValidationError("integrate_flow: interval count must be "
                          "non-negative");
  if (spectrum.levels() < std::size_t(n_intervals) + 1)
    throw ValidationError("integrate_flow: spectrum too short for the "
                          "requested interval count");
  if (points_per_interval < 1)
    throw ValidationError("integrate_flow: need at least one point per "
                          "interval");

  FlowResult out;
  out.n_intervals = n_intervals;
  out.nu5_initial = fitw5::eval_w5(w5, 1.0);

  double nu5 = out.nu5_initial;
  out.trajectory.push_back({spectrum.p[0], 1.0, nu5});
  for (int n = 1; n <= n_intervals; ++n) {
    const double lam_n = spectrum.p[std::size_t(n - 1)];
    const double lam_next = spectrum.p[std::size_t(n)];
    const double coulomb_gap = gamma / (double(n) * double(n + 1));
    const double ratio = (lam_n - lam_next) / coulomb_gap;
    const double w_top = fitw5::eval_w5(w5, 1.0 / double(n));

    for (int j = 1; j <= points_per_interval; ++j) {
      const double omega =
          lam_n + (lam_next - lam_n) * double(j) / double(points_per_interval);
      const double x = (1.0 / double(n)) *
                       (1.0 - (lam_n - omega) /
                                  (double(n + 1) * (lam_n - lam_next)));
      out.trajectory.push_back(
          {omega, x, nu5 - ratio * (w_top - fitw5::eval_w5(w5, x))});
    }
    nu5 -= ratio * (w_top - fitw5::eval_w5(w5, 1.0 / double(n + 1)));
  }
  out.nu5_final = nu5;
  return out;
}

double remainder_estimate(const fitw5::PiecewiseW5 &w5, int Z, int n_cut) {
  if (Z < 1)
    throw ValidationError("remainder_estimate: Z must be positive");
  if (n_cut < 1)
    throw ValidationError("remainder_estimate: n_cut must be at least 1");
  const double chi = fitw5::w5_at_zero(w5);
  return (fitw5::eval_w5(w5, 1.0 / double(n_cut + 1)) - chi) / double(Z);
}

double density(double nu5, double r) {
  if (!(r >= 1.0))
    throw ValidationError("density: r must be at least 1");
  const double r2 = r * r;
  return nu5 / (8.0 * kPi * r2 * r2 * r2 * r);
}

} // namespace vacpol::flow
