#include "vacpol/extrapolate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "vacpol/errors.hpp"

namespace vacpol::fitw5 {

namespace {

struct Objective {
  //! samples grouped by lambda_ir, groups ascending
  std::vector<std::vector<W5Sample>> groups;

  //! theta = (w5_inf per group..., beta, eta)
  double value(const std::vector<double> &theta) const {
    const double beta = theta[groups.size()];
    const double eta = theta[groups.size() + 1];
    double f = 0.0;
    for (std::size_t g = 0; g < groups.size(); ++g)
      for (const W5Sample &s : groups[g]) {
        const double r =
            theta[g] + beta * std::pow(s.lambda0, -eta) - s.w5;
        f += r * r;
      }
    return f;
  }

  std::vector<double> gradient(const std::vector<double> &theta) const {
    const double beta = theta[groups.size()];
    const double eta = theta[groups.size() + 1];
    std::vector<double> grad(theta.size(), 0.0);
    for (std::size_t g = 0; g < groups.size(); ++g)
      for (const W5Sample &s : groups[g]) {
        const double pw = std::pow(s.lambda0, -eta);
        const double r = theta[g] + beta * pw - s.w5;
        grad[g] += 2.0 * r;
        grad[groups.size()] += 2.0 * r * pw;
        grad[groups.size() + 1] += -2.0 * r * beta * pw * std::log(s.lambda0);
      }
    return grad;
  }
};

double norm(const std::vector<double> &v) {
  double s = 0.0;
  for (double x : v)
    s += x * x;
  return std::sqrt(s);
}

} // namespace

ExtrapolationResult extrapolate(const std::vector<W5Sample> &samples,
                                const ExtrapolateOptions &opts) {
  if (samples.empty())
    throw ValidationError("extrapolate: no samples");

  std::map<double, std::vector<W5Sample>> by_lambda;
  for (const W5Sample &s : samples) {
    if (!(s.lambda0 > 0.0))
      throw ValidationError("extrapolate: lambda0 must be positive");
    by_lambda[s.lambda_ir].push_back(s);
  }

  Objective obj;
  std::vector<double> lambda_irs;
  std::set<double> all_lambda0;
  for (auto &[lam, group] : by_lambda) {
    std::set<double> distinct;
    for (const W5Sample &s : group) {
      distinct.insert(s.lambda0);
      all_lambda0.insert(s.lambda0);
    }
    if (distinct.size() < 2)
      throw ValidationError(
          "extrapolate: need at least two distinct lambda0 per lambda_ir");
    lambda_irs.push_back(lam);
    obj.groups.push_back(group);
  }

  std::vector<double> theta(obj.groups.size() + 2, 0.0);
  for (std::size_t g = 0; g < obj.groups.size(); ++g) {
    double mean = 0.0;
    for (const W5Sample &s : obj.groups[g])
      mean += s.w5;
    theta[g] = mean / double(obj.groups[g].size());
  }
  theta[obj.groups.size()] = opts.beta_init;
  theta[obj.groups.size() + 1] = opts.eta_init;

  double f = obj.value(theta);
  double lr = opts.learning_rate;
  std::vector<double> grad = obj.gradient(theta);
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    if (norm(grad) < opts.grad_tol)
      break;
    std::vector<double> trial(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i)
      trial[i] = theta[i] - lr * grad[i];
    const double f_trial = obj.value(trial);
    if (f_trial <= f) {
      theta = std::move(trial);
      f = f_trial;
      grad = obj.gradient(theta);
      lr = std::min(lr * 1.25, opts.learning_rate * 1e4);
    } else {
      lr *= 0.5;
      if (lr < 1e-18)
        throw NumericalError("extrapolate: step-size backoff exhausted");
    }
  }

  ExtrapolationResult out;
  out.lambda_ir = std::move(lambda_irs);
  out.w5_infinity.assign(theta.begin(), theta.begin() + obj.groups.size());
  out.beta = theta[obj.groups.size()];
  out.eta = theta[obj.groups.size() + 1];
  out.grad_norm = norm(grad);
  out.iterations = iter;

  double w_scale = 0.0;
  for (const W5Sample &s : samples)
    w_scale = std::max(w_scale, std::fabs(s.w5));
  out.flat_direction =
      all_lambda0.size() < 3 || std::fabs(out.beta) < 1e-8 * w_scale;
  return out;
}

void PiecewiseW5::validate() const {
  if (knots.empty() || xi.size() != knots.size())
    throw ValidationError("w5 profile: need one exponent per knot interval");
  double prev = 0.0;
  for (double t : knots) {
    if (!(t > prev))
      throw ValidationError("w5 profile: knots must be ascending and positive");
    prev = t;
  }
  if (std::fabs(knots.back() - 1.0) > 1e-9)
    throw ValidationError("w5 profile: last knot must be 1");
}

PiecewiseW5 builtin_w5_profile() {
  PiecewiseW5 fit;
  fit.upsilon = 0.72;
  fit.chi = 0.03;
  fit.knots = {0.13, 0.20, 0.23, 1.0};
  fit.xi = {1.36, 1.35, 1.24, 0.84};
  return fit;
}

double eval_w5(const PiecewiseW5 &fit, double x) {
  fit.validate();
  if (!(x > 0.0) || x > 1.0 + 1e-12)
    throw ValidationError("eval_w5: x outside (0, 1]");
  if (x <= fit.knots[0])
    return fit.upsilon * std::pow(x, fit.xi[0]) + fit.chi;
  double val = fit.upsilon * std::pow(fit.knots[0], fit.xi[0]) + fit.chi;
  for (std::size_t i = 1; i < fit.knots.size(); ++i) {
    if (x <= fit.knots[i] + 1e-15)
      return val * std::pow(x / fit.knots[i - 1], fit.xi[i]);
    val *= std::pow(fit.knots[i] / fit.knots[i - 1], fit.xi[i]);
  }
  return val;
}

double w5_at_zero(const PiecewiseW5 &fit) {
  fit.validate();
  return fit.chi;
}

namespace {

//! log-log slope through the pivot (x0, v0)
double anchored_slope(const std::vector<double> &xs,
                      const std::vector<double> &ws, double x0, double v0) {
  double su2 = 0.0, suv = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double u = std::log(xs[i] / x0);
    const double v = std::log(ws[i] / v0);
    su2 += u * u;
    suv += u * v;
  }
  if (su2 == 0.0)
    throw ValidationError("fit_piecewise: degenerate interval samples");
  return suv / su2;
}

} // namespace

PiecewiseW5 fit_piecewise(const std::vector<double> &x,
                          const std::vector<double> &w,
                          const std::vector<double> &knots) {
  if (x.size() != w.size() || x.size() < 4)
    throw ValidationError("fit_piecewise: need >= 4 aligned samples");
  if (knots.empty())
    throw ValidationError("fit_piecewise: need at least one knot");

  std::vector<std::size_t> order(x.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  // first interval: w = upsilon x^xi + chi, chi by golden-section search
  std::vector<double> x0, w0;
  for (std::size_t i : order)
    if (x[i] <= knots[0]) {
      x0.push_back(x[i]);
      w0.push_back(w[i]);
    }
  if (x0.size() < 3)
    throw ValidationError("fit_piecewise: too few samples below the first knot");

  double w_min = *std::min_element(w0.begin(), w0.end());
  const auto sse_for_chi = [&](double chi, double &ups, double &xi1) {
    double su = 0.0, sv = 0.0, suu = 0.0, suv = 0.0;
    for (std::size_t i = 0; i < x0.size(); ++i) {
      const double u = std::log(x0[i]);
      const double v = std::log(w0[i] - chi);
      su += u;
      sv += v;
      suu += u * u;
      suv += u * v;
    }
    const double m = double(x0.size());
    const double denom = m * suu - su * su;
    xi1 = (m * suv - su * sv) / denom;
    ups = std::exp((sv - xi1 * su) / m);
    double sse = 0.0;
    for (std::size_t i = 0; i < x0.size(); ++i) {
      const double r =
          std::log(w0[i] - chi) - std::log(ups) - xi1 * std::log(x0[i]);
      sse += r * r;
    }
    return sse;
  };

  // the objective can grow a second basin when the offset competes with
  // the power term, so localize the global minimum by a scan before the
  // golden-section polish
  const double edge = w_min * (1.0 - 1e-9);
  double ups_tmp, xi_tmp;
  const int scan = 128;
  double best_chi = 0.0;
  double best_sse = sse_for_chi(0.0, ups_tmp, xi_tmp);
  for (int j = 1; j <= scan; ++j) {
    const double chi = edge * double(j) / scan;
    const double s = sse_for_chi(chi, ups_tmp, xi_tmp);
    if (s < best_sse) {
      best_sse = s;
      best_chi = chi;
    }
  }

  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  const double step = edge / scan;
  double lo = std::max(0.0, best_chi - step);
  double hi = std::min(edge, best_chi + step);
  double c1 = hi - phi * (hi - lo), c2 = lo + phi * (hi - lo);
  double f1 = sse_for_chi(c1, ups_tmp, xi_tmp);
  double f2 = sse_for_chi(c2, ups_tmp, xi_tmp);
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, w_min); ++it) {
    if (f1 < f2) {
      hi = c2;
      c2 = c1;
      f2 = f1;
      c1 = hi - phi * (hi - lo);
      f1 = sse_for_chi(c1, ups_tmp, xi_tmp);
    } else {
      lo = c1;
      c1 = c2;
      f1 = f2;
      c2 = lo + phi * (hi - lo);
      f2 = sse_for_chi(c2, ups_tmp, xi_tmp);
    }
  }

  PiecewiseW5 fit;
  fit.chi = 0.5 * (lo + hi);
  sse_for_chi(fit.chi, fit.upsilon, xi_tmp);
  fit.knots = knots;
  fit.xi.assign(knots.size(), 0.0);
  fit.xi[0] = xi_tmp;

  // later intervals: one exponent each, continuity through the chained
  // value at the left knot
  double left_val = fit.upsilon * std::pow(knots[0], fit.xi[0]) + fit.chi;
  for (std::size_t k = 1; k < knots.size(); ++k) {
    std::vector<double> xs, ws;
    for (std::size_t i : order)
      if (x[i] > knots[k - 1] && x[i] <= knots[k]) {
        xs.push_back(x[i]);
        ws.push_back(w[i]);
      }
    if (xs.empty())
      throw ValidationError("fit_piecewise: interval without samples");
    fit.xi[k] = anchored_slope(xs, ws, knots[k - 1], left_val);
    left_val *= std::pow(knots[k] / knots[k - 1], fit.xi[k]);
  }
  fit.validate();
  return fit;
}

} // namespace vacpol::fitw5
