#include "vacpol/specfun.hpp"

#include <cmath>
#include <limits>

#include "vacpol/detail/dd.hpp"
#include "vacpol/errors.hpp"

namespace vacpol::specfun {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640561764;

// Lanczos, g = 607/128, 15 terms
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

bool is_nonpositive_integer(cd z) {
  return z.imag() == 0.0 && z.real() <= 0.0 &&
         z.real() == std::floor(z.real());
}

//! Lanczos log Gamma, valid for Re z >= 0.5
cd log_gamma_right(cd z) {
  cd sum = kLanczos[0];
  for (int k = 1; k < 15; ++k)
    sum += kLanczos[k] / (z - 1.0 + static_cast<double>(k));
  const cd t = z - 0.5 + kLanczosG;
  return kLogSqrt2Pi + (z - 0.5) * std::log(t) - t + std::log(sum);
}

} // namespace

cd log_gamma(cd z) {
  if (is_nonpositive_integer(z))
    throw std::domain_error("log_gamma: pole at non-positive integer");
  if (z.real() >= 0.5)
    return log_gamma_right(z);
  // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
  return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma_right(1.0 - z);
}

cd gamma(cd z) {
  if (is_nonpositive_integer(z))
    throw std::domain_error("gamma: pole at non-positive integer");
  if (z.real() >= 0.5)
    return std::exp(log_gamma_right(z));
  return kPi / (std::sin(kPi * z) * std::exp(log_gamma_right(1.0 - z)));
}

namespace {

using detail::cdd;
using detail::dd;

cdd to_cdd(cd z) { return {dd(z.real()), dd(z.imag())}; }
cd to_cd(cdd z) { return {z.re.hi + z.re.lo, z.im.hi + z.im.lo}; }

//! terminating sum for a = -n (exact polynomial)
cd hyp1f1_polynomial(int n, cd b, cd z) {
  cd term = 1.0, sum = 1.0;
  for (int k = 0; k < n; ++k) {
    term *= (cd(-n + k) * z) / ((b + cd(k)) * cd(k + 1));
    sum += term;
  }
  return sum;
}

constexpr double kSeriesRadius = 45.0;

//! Kummer series in double-double; the sum cancels down from terms of size
//! e^{|z|}, so both the terms and the accumulator carry extended precision
cd hyp1f1_series(cd a, cd b, cd z) {
  const cdd zdd = to_cdd(z);
  const cdd add = to_cdd(a);
  const cdd bdd = to_cdd(b);
  cdd term = {dd(1.0), dd(0.0)};
  cdd sum = term;
  double max_term = 1.0;
  int small_count = 0;
  int n_terms = 0;
  for (int k = 0; k < 2000; ++k) {
    const cdd kk = {dd(double(k)), dd(0.0)};
    const cdd num = (add + kk) * zdd;
    const cdd den = (bdd + kk) * cdd{dd(double(k + 1)), dd(0.0)};
    term = term * num / den;
    sum = sum + term;
    ++n_terms;
    const double t2 = detail::abs2(term);
    max_term = std::max(max_term, std::sqrt(t2));
    if (t2 < 1e-64 * detail::abs2(sum)) {
      if (++small_count >= 2)
        break;
    } else {
      small_count = 0;
    }
    if (k == 1999)
      throw NumericalError("hyp1f1: series did not converge");
  }
  const double mag = std::sqrt(detail::abs2(sum));
  const double err = max_term * 1e-31 * std::sqrt(double(n_terms));
  if (err > 1e-10 * mag)
    throw NumericalError("hyp1f1: series precision exhausted");
  return to_cd(sum);
}

//! one asymptotic 2F0-type sum, truncated at its smallest term
cd asymptotic_sum(cd alpha, cd beta, cd winv, double &rel_err) {
  cd term = 1.0, sum = 1.0;
  double smallest = 1.0;
  for (int k = 0; k < 80; ++k) {
    const cd next = term * (alpha + cd(k)) * (beta + cd(k)) * winv / cd(k + 1);
    const double mag = std::abs(next);
    if (mag >= smallest && k > 2)
      break;  // divergent tail reached
    term = next;
    sum += term;
    smallest = mag;
    if (mag < 1e-17)
      break;
  }
  rel_err = smallest;
  return sum;
}

//! large-|z| expansion (valid into both half planes; sigma follows Im z)
cd hyp1f1_asymptotic(cd a, cd b, cd z) {
  const double sigma = (z.imag() >= 0.0) ? 1.0 : -1.0;
  const cd logz = std::log(z);
  const cd log_gb = log_gamma(b);

  cd first = 0.0;
  double err1 = 0.0;
  if (!is_nonpositive_integer(b - a)) {
    double e;
    const cd s1 = asymptotic_sum(a, a - b + 1.0, -1.0 / z, e);
    const cd pref =
        std::exp(log_gb - log_gamma(b - a) - a * logz +
                 cd(0.0, sigma * kPi) * a);
    first = pref * s1;
    err1 = std::abs(pref) * e;
  }
  cd second = 0.0;
  double err2 = 0.0;
  if (!is_nonpositive_integer(a)) {
    double e;
    const cd s2 = asymptotic_sum(b - a, 1.0 - a, 1.0 / z, e);
    const cd pref = std::exp(log_gb - log_gamma(a) + z + (a - b) * logz);
    second = pref * s2;
    err2 = std::abs(pref) * e;
  }
  const cd result = first + second;
  if (err1 + err2 > 1e-10 * std::abs(result))
    throw NumericalError("hyp1f1: asymptotic expansion below tolerance");
  return result;
}

} // namespace

cd hyp1f1(cd a, cd b, cd z) {
  if (is_nonpositive_integer(b))
    throw std::domain_error("hyp1f1: b at non-positive integer");
  if (z == cd(0.0))
    return 1.0;
  if (is_nonpositive_integer(a))
    return hyp1f1_polynomial(static_cast<int>(-a.real()), b, z);
  if (std::abs(z) <= kSeriesRadius)
    return hyp1f1_series(a, b, z);
  return hyp1f1_asymptotic(a, b, z);
}

double expint_en(int n, double x) {
  if (n < 0)
    throw std::domain_error("expint_en: order must be non-negative");
  if (x < 0.0 || (x == 0.0 && n <= 1))
    throw std::domain_error("expint_en: argument out of domain");
  if (x == 0.0)
    return 1.0 / (n - 1);
  if (n == 0)
    return std::exp(-x) / x;

  constexpr double kEps = 1e-15;
  constexpr int kMaxIter = 20000;
  if (x > 1.0) {
    // modified Lentz continued fraction
    const double tiny = std::numeric_limits<double>::min() / kEps;
    double bb = x + n;
    double c = 1.0 / tiny;
    double d = 1.0 / bb;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
      const double aa = -double(i) * double(n - 1 + i);
      bb += 2.0;
      d = 1.0 / (aa * d + bb);
      c = bb + aa / c;
      const double del = c * d;
      h *= del;
      if (std::fabs(del - 1.0) < kEps)
        return h * std::exp(-x);
    }
    throw NumericalError("expint_en: continued fraction did not converge");
  }

  // series with the digamma term at m = n-1
  constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
  double psi = -kEulerGamma;
  for (int i = 1; i < n; ++i)
    psi += 1.0 / i;
  double result = (n - 1 != 0) ? 1.0 / (n - 1) : psi - std::log(x);
  double fact = 1.0;
  for (int m = 1; m <= kMaxIter; ++m) {
    fact *= -x / m;
    double del;
    if (m != n - 1)
      del = -fact / (m - n + 1);
    else
      del = fact * (psi - std::log(x));
    result += del;
    if (std::fabs(del) < std::fabs(result) * kEps)
      return result;
  }
  throw NumericalError("expint_en: series did not converge");
}

} // namespace vacpol::specfun
