#include "vacpol/spectral_density.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "vacpol/errors.hpp"
#include "vacpol/quadrature.hpp"
#include "vacpol/radial_dirac.hpp"

namespace vacpol::spectral {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void check_grid_window(const PhysicalParams &params,
                       const std::vector<double> &grid) {
  if (grid.empty())
    throw ValidationError("spectral: empty grid");
  const double a = params.a_eff(), b = params.b_eff();
  double prev = 0.0;
  for (double x : grid) {
    if (!(x > prev))
      throw ValidationError("spectral: grid must be positive and increasing");
    prev = x;
    if (x < a * (1.0 - 1e-12) || x > b * (1.0 + 1e-12))
      throw ValidationError("spectral: grid point outside the working window");
  }
}

//! |F|^2 + |G|^2 of one continuum state on the whole grid
std::vector<double> continuum_mod2(const PhysicalParams &params, int kappa,
                                   double p, int sign,
                                   const std::vector<double> &grid) {
  const dirac::RadialSolution sol =
      dirac::continuum_solution(params.gamma(), kappa, p, sign, grid);
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    out[i] = sol.F[i] * sol.F[i] + sol.G[i] * sol.G[i];
  return out;
}

} // namespace

double PhysicalParams::a_eff() const {
  return a_bound > 0.0 ? a_bound : 2.0 / lambda0;
}

double PhysicalParams::b_eff() const {
  return b_bound > 0.0 ? b_bound : K / (2.0 * gamma() * std::sqrt(lambda0));
}

void PhysicalParams::validate() const {
  if (Z < 1 || !(alpha > 0.0) || !(gamma() < 1.0))
    throw ValidationError("params: need Z >= 1 and 0 < Z*alpha < 1");
  if (!(lambda_ir > 0.0) || !(lambda_ir < lambda0))
    throw ValidationError("params: need 0 < lambda_ir < lambda0");
  if (K < 1 || M_lambda < 1)
    throw ValidationError("params: need K >= 1 and M_lambda >= 1");
  if (!(a_eff() > 0.0) || !(a_eff() < b_eff()))
    throw ValidationError("params: working window is empty");
}

int QuadratureSpec::panels(double lambda_ir, double lambda0, double b) const {
  const double width =
      max_panel_width > 0.0 ? max_panel_width : kPi / (2.0 * b);
  return std::max(1, int(std::ceil((lambda0 - lambda_ir) / width)));
}

ChannelDensity channel_density(const PhysicalParams &params, int kappa,
                               const std::vector<double> &grid,
                               const QuadratureSpec &spec) {
  params.validate();
  check_grid_window(params, grid);
  if (kappa == 0 || std::abs(kappa) > params.K)
    throw ValidationError("spectral: kappa outside 0 < |kappa| <= K");

  const std::size_t m = grid.size();
  ChannelDensity ch;
  ch.kappa = kappa;
  ch.y_minus.assign(m, 0.0);
  ch.y_plus.assign(m, 0.0);
  ch.y_bound.assign(m, 0.0);

  // momentum integral, one Gauss-Legendre panel at a time, accumulating
  // every grid point in the same pass
  const int n_panels = spec.panels(params.lambda_ir, params.lambda0,
                                   params.b_eff());
  const double width = (params.lambda0 - params.lambda_ir) / n_panels;
  for (int panel = 0; panel < n_panels; ++panel) {
    const double lo = params.lambda_ir + panel * width;
    const double mid = lo + 0.5 * width, half = 0.5 * width;
    for (std::size_t j = 0; j < quad::kGL16Nodes.size(); ++j) {
      for (double node : {mid - half * quad::kGL16Nodes[j],
                          mid + half * quad::kGL16Nodes[j]}) {
        const double wgt = quad::kGL16Weights[j] * half;
        const std::vector<double> minus =
            continuum_mod2(params, kappa, node, -1, grid);
        const std::vector<double> plus =
            continuum_mod2(params, kappa, node, +1, grid);
        for (std::size_t i = 0; i < m; ++i) {
          ch.y_minus[i] += wgt * minus[i];
          ch.y_plus[i] += wgt * plus[i];
        }
      }
    }
  }

  // bound states with |kappa| + n <= M_lambda and momentum >= lambda_ir
  const int n_min = kappa > 0 ? 1 : 0;
  for (int n = n_min; std::abs(kappa) + n <= params.M_lambda; ++n) {
    const dirac::BoundState st = dirac::bound_energy(params.gamma(), kappa, n);
    if (st.p < params.lambda_ir)
      continue;
    const dirac::RadialSolution sol =
        dirac::bound_solution(params.gamma(), kappa, n, grid);
    for (std::size_t i = 0; i < m; ++i)
      ch.y_bound[i] += sol.F[i] * sol.F[i] + sol.G[i] * sol.G[i];
  }
  return ch;
}

SampledDensity assemble_density(const PhysicalParams &params,
                                const std::vector<double> &grid,
                                const QuadratureSpec &spec, int threads,
                                bool keep_channels) {
  params.validate();
  check_grid_window(params, grid);

  std::vector<int> kappas;
  for (int k = 1; k <= params.K; ++k) {
    kappas.push_back(-k);
    kappas.push_back(k);
  }

  std::vector<ChannelDensity> channels(kappas.size());
  int n_threads = threads > 0
                      ? threads
                      : int(std::max(1u, std::thread::hardware_concurrency()));
  n_threads = std::min<int>(n_threads, int(kappas.size()));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < kappas.size(); ++i)
      channels[i] = channel_density(params, kappas[i], grid, spec);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int t = 0; t < n_threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < kappas.size(); i = next++) {
          try {
            channels[i] = channel_density(params, kappas[i], grid, spec);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error)
              error = std::current_exception();
            return;
          }
        }
      });
    for (auto &th : pool)
      th.join();
    if (error)
      std::rethrow_exception(error);
  }

  SampledDensity out;
  out.x = grid;
  out.params = params;
  out.y.assign(grid.size(), 0.0);
  // fixed channel order keeps the reduction deterministic
  for (std::size_t c = 0; c < channels.size(); ++c) {
    const double degeneracy = 2.0 * std::abs(channels[c].kappa);
    for (std::size_t i = 0; i < grid.size(); ++i)
      out.y[i] += degeneracy * (channels[c].y_minus[i] - channels[c].y_plus[i] -
                                channels[c].y_bound[i]);
  }
  if (keep_channels)
    out.channels = std::move(channels);
  return out;
}

std::vector<double> uniform_grid(double a, double b, int n) {
  if (!(a > 0.0) || !(b > a) || n < 2)
    throw ValidationError("uniform_grid: need 0 < a < b and n >= 2");
  std::vector<double> grid(n);
  const double h = (b - a) / (n - 1);
  for (int i = 0; i < n; ++i)
    grid[i] = a + h * i;
  grid.back() = b;
  return grid;
}

} // namespace vacpol::spectral
