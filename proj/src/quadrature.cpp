#include "vacpol/quadrature.hpp"

#include <cmath>

#include "vacpol/errors.hpp"

namespace vacpol::quad {

const std::array<double, 8> kGL16Nodes = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};

const std::array<double, 8> kGL16Weights = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

namespace {

// Gauss(7)/Kronrod(15) abscissas on [0,1] side, Kronrod weights, and the
// embedded Gauss weights (nonzero at odd indices)
constexpr double kXK[8] = {
    0.9914553711208126392068547, 0.9491079123427585245261897,
    0.8648644233597690727897128, 0.7415311855993944398638648,
    0.5860872354676911302941448, 0.4058451513773971669066064,
    0.2077849550078984676006894, 0.0};

constexpr double kWK[8] = {
    0.0229353220105292249637320, 0.0630920926299785532907007,
    0.1047900103222501838398763, 0.1406532597155259187451896,
    0.1690047266392679028265834, 0.1903505780647854099132564,
    0.2044329400752988924141620, 0.2094821410847278280129992};

constexpr double kWG[4] = {
    0.1294849661688696932706114, 0.2797053914892766679014678,
    0.3818300505051189449503698, 0.4179591836734693877551020};

template <typename T>
void gk15(const std::function<T(double)> &f, double a, double b, T &kronrod,
          double &err) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  T resk = T(0), resg = T(0);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXK[i];
    const T pair = f(mid - dx) + f(mid + dx);
    resk += kWK[i] * pair;
    if (i % 2 == 1)
      resg += kWG[i / 2] * pair;
  }
  const T fc = f(mid);
  resk += kWK[7] * fc;
  resg += kWG[3] * fc;
  kronrod = resk * half;
  err = std::abs((resk - resg) * half);
}

template <typename T>
T adaptive_gk_impl(const std::function<T(double)> &f, double a, double b,
                   double rel_tol, double abs_tol) {
  struct Segment {
    double a, b;
  };
  constexpr int kMaxSegments = 200000;

  std::vector<Segment> stack = {{a, b}};
  T total = T(0);
  double done_width = 0.0;
  const double full_width = b - a;
  int used = 0;

  // first pass for the tolerance scale
  T coarse;
  double coarse_err;
  gk15(f, a, b, coarse, coarse_err);
  const double scale = std::max(std::abs(coarse), 1e-300);

  while (!stack.empty()) {
    const Segment seg = stack.back();
    stack.pop_back();
    T val;
    double err;
    gk15(f, seg.a, seg.b, val, err);
    const double width = seg.b - seg.a;
    const double full_budget = std::max(abs_tol, rel_tol * scale);
    const double budget = full_budget * (width / full_width);
    if (err <= budget) {
      total += val;
      done_width += width;
    } else if (width < 1e-14 * full_width) {
      if (err > full_budget)
        throw NumericalError("adaptive_gk: integrand not resolved at the "
                             "smallest segment width");
      total += val;
      done_width += width;
    } else {
      if (++used > kMaxSegments)
        throw NumericalError("adaptive_gk: subdivision budget exhausted");
      const double mid = 0.5 * (seg.a + seg.b);
      stack.push_back({mid, seg.b});
      stack.push_back({seg.a, mid});
    }
  }
  (void)done_width;
  return total;
}

} // namespace

double adaptive_gk(const std::function<double(double)> &f, double a, double b,
                   double rel_tol, double abs_tol) {
  return adaptive_gk_impl<double>(f, a, b, rel_tol, abs_tol);
}

std::complex<double>
adaptive_gk_complex(const std::function<std::complex<double>(double)> &f,
                    double a, double b, double rel_tol, double abs_tol) {
  return adaptive_gk_impl<std::complex<double>>(f, a, b, rel_tol, abs_tol);
}

namespace {

template <typename T>
T simpson_impl(const std::vector<double> &x, const std::vector<T> &y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 3)
    throw ValidationError("simpson: need matching grids with >= 3 points");
  const double h = x[1] - x[0];
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (std::fabs((x[i + 1] - x[i]) - h) > 1e-9 * std::fabs(h))
      throw ValidationError("simpson: grid is not uniform");

  // even point count: peel a 3/8 block off the end
  std::size_t m = n;
  T tail = T(0);
  if (n % 2 == 0) {
    m = n - 3;
    tail = (y[n - 4] + 3.0 * y[n - 3] + 3.0 * y[n - 2] + y[n - 1]) *
           (3.0 * h / 8.0);
    if (m == 1)
      return tail;
  }
  T acc = y[0] + y[m - 1];
  for (std::size_t i = 1; i < m - 1; ++i)
    acc += y[i] * ((i % 2 == 1) ? 4.0 : 2.0);
  return acc * (h / 3.0) + tail;
}

} // namespace

double simpson_uniform(const std::vector<double> &x,
                       const std::vector<double> &y) {
  return simpson_impl<double>(x, y);
}

std::complex<double>
simpson_uniform_weighted(const std::vector<double> &x,
                         const std::vector<double> &y,
                         const std::function<std::complex<double>(double)> &w) {
  std::vector<std::complex<double>> fy(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    fy[i] = y[i] * w(x[i]);
  return simpson_impl<std::complex<double>>(x, fy);
}

} // namespace vacpol::quad
