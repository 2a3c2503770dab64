#include "vacpol/decompose.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "vacpol/errors.hpp"
#include "vacpol/quadrature.hpp"
#include "vacpol/uehling.hpp"

namespace vacpol::decomp {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double e4_at_zero(Window w) {
  return (std::pow(w.a, -4) - std::pow(w.b, -4)) / 4.0;
}

//! per-row values of one basis column
struct Column {
  std::vector<cd> real_rows;
  std::vector<cd> imag_rows;
};

Column eval_column(const std::function<cd(cd)> &f,
                   const std::vector<double> &p_grid,
                   const std::vector<double> &q_grid) {
  Column col;
  col.real_rows.reserve(p_grid.size());
  col.imag_rows.reserve(q_grid.size());
  for (double p : p_grid)
    col.real_rows.push_back(f(cd(p, 0.0)));
  for (double q : q_grid)
    col.imag_rows.push_back(f(cd(0.0, q)));
  return col;
}

struct FitOutcome {
  std::vector<double> coef;
  double lls_residual = 0;
};

//! least squares over all rows; columns scaled to unit max before the
//! normal equations
FitOutcome solve_lls(const std::vector<Column> &columns,
                     const std::vector<cd> &rhs_real,
                     const std::vector<cd> &rhs_imag) {
  const std::size_t nc = columns.size();
  const std::size_t n_eq = rhs_real.size() + 2 * rhs_imag.size();
  Eigen::MatrixXd A(n_eq, nc);
  Eigen::VectorXd b(n_eq);

  for (std::size_t c = 0; c < nc; ++c) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < rhs_real.size(); ++i, ++r)
      A(r, c) = columns[c].real_rows[i].real();
    for (std::size_t i = 0; i < rhs_imag.size(); ++i) {
      A(r++, c) = columns[c].imag_rows[i].real();
      A(r++, c) = columns[c].imag_rows[i].imag();
    }
  }
  {
    std::size_t r = 0;
    for (std::size_t i = 0; i < rhs_real.size(); ++i, ++r)
      b(r) = rhs_real[i].real();
    for (std::size_t i = 0; i < rhs_imag.size(); ++i) {
      b(r++) = rhs_imag[i].real();
      b(r++) = rhs_imag[i].imag();
    }
  }

  Eigen::VectorXd scale(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    const double m = A.col(c).cwiseAbs().maxCoeff();
    scale(c) = m > 0.0 ? 1.0 / m : 1.0;
    A.col(c) *= scale(c);
  }
  const Eigen::VectorXd x =
      (A.transpose() * A).ldlt().solve(A.transpose() * b);

  FitOutcome out;
  out.coef.resize(nc);
  for (std::size_t c = 0; c < nc; ++c)
    out.coef[c] = x(c) * scale(c);
  out.lls_residual = (A * x - b).norm();
  return out;
}

//! matched-filter strength at omega: norm of the best real-coefficient fit
//! of the windowed residual rows by the sin/cos columns, solved through the
//! 2x2 Gram of those columns; (c_cos, c_sin) is the unit phase vector
void filter_strength(double omega, const std::vector<double> &q_grid,
                     const std::vector<cd> &residual, std::size_t lo,
                     std::size_t hi, Window w, double &strength, double &c_cos,
                     double &c_sin) {
  double gss = 0.0, gcc = 0.0, gsc = 0.0, bs = 0.0, bc = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) {
    const cd p(0.0, q_grid[i]);
    const cd s = transform_sin(omega, p, w);
    const cd c = transform_cos(omega, p, w);
    gss += std::norm(s);
    gcc += std::norm(c);
    gsc += (std::conj(s) * c).real();
    bs += (std::conj(s) * residual[i]).real();
    bc += (std::conj(c) * residual[i]).real();
  }
  const double det = gss * gcc - gsc * gsc;
  double v1, v2;
  if (det > 1e-12 * gss * gcc) {
    v1 = (bs * gcc - bc * gsc) / det;
    v2 = (bc * gss - bs * gsc) / det;
  } else {
    v1 = 0.0;
    v2 = gcc > 0.0 ? bc / gcc : 0.0;
  }
  strength = std::sqrt(std::max(0.0, v1 * bs + v2 * bc));

  if (std::fabs(v1) + std::fabs(v2) == 0.0)
    v2 = 1.0;
  const double nrm = std::hypot(v1, v2);
  c_sin = v1 / nrm;
  c_cos = v2 / nrm;
  if (c_sin < 0.0 || (c_sin == 0.0 && c_cos < 0.0)) {
    c_sin = -c_sin;
    c_cos = -c_cos;
  }
}

//! sharpen a spike frequency by minimizing the residual of the full fit
//! with trial cos/sin columns appended; the matched filter alone blurs a
//! tone that completes only a couple of periods inside the window
double refine_frequency(double seed, double span,
                        const std::vector<Column> &columns,
                        const std::vector<cd> &rhs_real,
                        const std::vector<cd> &rhs_imag,
                        const std::vector<double> &p_grid,
                        const std::vector<double> &q_grid, Window w) {
  const auto residual_at = [&](double om) {
    std::vector<Column> cols = columns;
    cols.push_back(eval_column(
        [om, w](cd p) { return laplace::transform_cos(om, p, w); }, p_grid,
        q_grid));
    cols.push_back(eval_column(
        [om, w](cd p) { return laplace::transform_sin(om, p, w); }, p_grid,
        q_grid));
    return solve_lls(cols, rhs_real, rhs_imag).lls_residual;
  };

  const double lo_edge = std::max(seed - span, 1e-6);
  const double hi_edge = seed + span;
  const int scan = 32;
  double best_om = seed, best_val = residual_at(seed);
  for (int j = 0; j <= scan; ++j) {
    const double om = lo_edge + (hi_edge - lo_edge) * double(j) / scan;
    const double v = residual_at(om);
    if (v < best_val) {
      best_val = v;
      best_om = om;
    }
  }

  const double step = (hi_edge - lo_edge) / scan;
  double a = std::max(best_om - step, 1e-6);
  double b = best_om + step;
  const double inv_phi = 0.6180339887498948482;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = residual_at(x1);
  double f2 = residual_at(x2);
  for (int it = 0; it < 64 && (b - a) > 1e-12 * (1.0 + b); ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = residual_at(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = residual_at(x2);
    }
  }
  return 0.5 * (a + b);
}

} // namespace

SpikeResult find_frequency(const std::vector<double> &q_grid,
                           const std::vector<cd> &residual, Window w,
                           const DecomposeOptions &opts) {
  w.validate();
  if (q_grid.size() != residual.size() || q_grid.size() < 3)
    throw ValidationError("find_frequency: need >= 3 aligned samples");

  double global_max = 0.0;
  for (const cd &r : residual)
    global_max = std::max(global_max, std::abs(r));
  const double noise_floor = opts.spike_floor * global_max;

  // highest interior local maximum above the floor
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t i = 1; i + 1 < q_grid.size(); ++i) {
    const double m = std::abs(residual[i]);
    if (m >= std::abs(residual[i - 1]) && m >= std::abs(residual[i + 1]) &&
        m > noise_floor && m > best_mag) {
      best = i;
      best_mag = m;
    }
  }
  if (best_mag < 0.0)
    throw NumericalError("find_frequency: no spike above the noise floor");

  const std::size_t hw = std::size_t(std::max(1, opts.spike_halfwidth));
  const std::size_t lo = best > hw ? best - hw : 0;
  const std::size_t hi = std::min(best + hw, q_grid.size() - 1);

  SpikeResult out;
  const int refine = 64;
  for (int j = 0; j <= refine; ++j) {
    const double omega =
        q_grid[lo] + (q_grid[hi] - q_grid[lo]) * double(j) / refine;
    double strength, c_cos, c_sin;
    filter_strength(omega, q_grid, residual, lo, hi, w, strength, c_cos,
                    c_sin);
    if (strength > out.strength) {
      out.omega = omega;
      out.strength = strength;
      out.c_cos = c_cos;
      out.c_sin = c_sin;
    }
  }
  return out;
}

double remainder_norm(const std::vector<double> &grid,
                      const std::vector<double> &values, Window w) {
  w.validate();
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    sq[i] = values[i] * values[i];
  const double integral = quad::simpson_uniform(grid, sq);
  const double denom = (w.b - w.a) * e4_at_zero(w);
  return std::sqrt(std::max(0.0, integral)) / denom;
}

double oscillation_norm(const std::vector<Oscillation> &modes, Window w) {
  w.validate();
  double sum = 0.0;
  for (const Oscillation &m : modes) {
    const cd s0 = transform_osc(m.omega, cd(0.0), w);
    const double v = m.c_cos * s0.real() + m.c_sin * s0.imag();
    sum += v * v;
  }
  return std::sqrt(sum) / e4_at_zero(w);
}

Decomposition decompose(const spectral::SampledDensity &density,
                        const DecomposeOptions &opts) {
  const Window w{density.a(), density.b()};
  w.validate();
  const std::vector<double> &grid = density.x;
  const std::size_t n = grid.size();
  if (n < 9 || density.y.size() != n)
    throw ValidationError("decompose: need >= 9 aligned density samples");

  // data with the screening profile removed up front (unit coefficient)
  std::vector<double> data(n);
  std::vector<double> u_vals(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (opts.gamma != 0.0)
      u_vals[i] = uehling::u_position(grid[i], opts.gamma);
    data[i] = density.y[i] - u_vals[i];
  }

  // row grids
  const double p_max = opts.p_max > 0.0 ? opts.p_max : 4.0 / w.a;
  const int n_real = std::max(2, opts.n_real_p);
  std::vector<double> p_grid(n_real);
  for (int j = 0; j < n_real; ++j)
    p_grid[j] = p_max * double(j) / (n_real - 1);

  const double h = (w.b - w.a) / double(n - 1);
  const double dq = kPi / (4.0 * (w.b - w.a));
  // keep the phase advance per sample step small enough for the Simpson
  // transform of the data to stay trustworthy on every row
  const double q_auto = 0.15 / h;
  const double q_max = opts.q_max > 0.0 ? opts.q_max : q_auto;
  std::vector<double> q_grid;
  for (double q = dq; q <= q_max; q += dq)
    q_grid.push_back(q);
  if (q_grid.size() < 8)
    throw ValidationError("decompose: window too narrow for the spike grid");

  // transformed data on both row sets
  std::vector<cd> rhs_real(p_grid.size()), rhs_imag(q_grid.size());
  for (std::size_t j = 0; j < p_grid.size(); ++j)
    rhs_real[j] = laplace::laplace_transform(grid, data, cd(p_grid[j], 0.0));
  for (std::size_t j = 0; j < q_grid.size(); ++j)
    rhs_imag[j] = laplace::laplace_transform(grid, data, cd(0.0, q_grid[j]));

  // fixed basis: linear, delta, 1/x, 1/x^5
  std::vector<Column> columns;
  columns.push_back(eval_column(
      [w](cd p) { return laplace::transform_linear(p, w); }, p_grid, q_grid));
  columns.push_back(
      eval_column([](cd) { return cd(1.0); }, p_grid, q_grid));
  columns.push_back(eval_column(
      [w](cd p) { return laplace::transform_inv_power(0, p, w); }, p_grid,
      q_grid));
  columns.push_back(eval_column(
      [w](cd p) { return laplace::transform_inv_power(4, p, w); }, p_grid,
      q_grid));

  struct Candidate {
    Decomposition dec;
    bool valid = false;
  } best;

  std::vector<double> omegas;
  Decomposition current;

  for (int iter = 0;; ++iter) {
    const FitOutcome fit = solve_lls(columns, rhs_real, rhs_imag);

    current.c1 = fit.coef[0];
    current.c2 = fit.coef[1];
    current.w1 = fit.coef[2];
    current.w5 = fit.coef[3];
    current.modes.clear();
    for (std::size_t k = 0; k < omegas.size(); ++k)
      current.modes.push_back(
          {omegas[k], fit.coef[4 + 2 * k], fit.coef[5 + 2 * k]});
    current.fit_iterations = iter;
    current.lls_residual_history.push_back(fit.lls_residual);

    current.remainder.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      double model = current.c1 * grid[i] + current.w1 / grid[i] +
                     current.w5 / std::pow(grid[i], 5);
      for (const Oscillation &m : current.modes)
        model += m.c_cos * std::cos(m.omega * grid[i]) +
                 m.c_sin * std::sin(m.omega * grid[i]);
      current.remainder[i] = data[i] - model;
    }
    current.remainder_norm = remainder_norm(grid, current.remainder, w);
    current.oscillation_norm = oscillation_norm(current.modes, w);

    if (current.remainder_norm <= opts.remainder_tol &&
        (!best.valid ||
         current.oscillation_norm < best.dec.oscillation_norm)) {
      best.dec = current;
      best.valid = true;
    }
    if (iter >= opts.max_frequencies)
      break;

    // residual transform on the imaginary axis, from the cached columns
    std::vector<cd> residual = rhs_imag;
    for (std::size_t c = 0; c < columns.size(); ++c)
      for (std::size_t j = 0; j < q_grid.size(); ++j)
        residual[j] -= fit.coef[c] * columns[c].imag_rows[j];

    SpikeResult spike;
    try {
      spike = find_frequency(q_grid, residual, w, opts);
    } catch (const NumericalError &) {
      break;
    }
    const double hw_span = double(std::max(1, opts.spike_halfwidth)) * dq;
    const double refined =
        refine_frequency(spike.omega, hw_span, columns, rhs_real, rhs_imag,
                         p_grid, q_grid, w);
    const bool duplicate =
        std::any_of(omegas.begin(), omegas.end(), [&](double om) {
          return std::fabs(om - refined) < 0.25 * dq;
        });
    if (duplicate)
      break;

    omegas.push_back(refined);
    const double om = refined;
    columns.push_back(eval_column(
        [om, w](cd p) { return laplace::transform_cos(om, p, w); }, p_grid,
        q_grid));
    columns.push_back(eval_column(
        [om, w](cd p) { return laplace::transform_sin(om, p, w); }, p_grid,
        q_grid));
  }

  if (!best.valid)
    throw NumericalError(
        "decompose: remainder norm above tolerance after the frequency "
        "budget");
  return best.dec;
}

} // namespace vacpol::decomp
