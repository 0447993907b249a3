#include "tomoci/gamma.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tomoci/errors.hpp"

namespace tomoci {
namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 100000;

void check_params(const GammaParams& p) {
  if (!(p.mean > 0.0) || !(p.variance > 0.0) || !std::isfinite(p.mean) ||
      !std::isfinite(p.variance)) {
    throw InvalidArgument("gamma: mean and variance must be positive and finite (mean=" +
                          std::to_string(p.mean) + ", variance=" + std::to_string(p.variance) + ")");
  }
}

// lgamma(k) - [(k - 1/2) log k - k + log(2 pi) / 2], k >= 10
double stirling_correction(double k) {
  const double r = 1.0 / (k * k);
  return (1.0 / 12 - r * (1.0 / 360 - r * (1.0 / 1260 - r * (1.0 / 1680)))) / k;
}

// log of x^k e^-x / Gamma(k). For large k the direct form cancels terms of
// size k log k, so it is rewritten as k (log1p(t) - t) + log(k / 2 pi) / 2 -
// stirling_correction(k) with t = (x - k) / k.
double log_prefactor(double k, double x) {
  if (k < 10.0) return -x + k * std::log(x) - std::lgamma(k);
  const double t = (x - k) / k;
  return k * (std::log1p(t) - t) + 0.5 * std::log(k / (2.0 * M_PI)) - stirling_correction(k);
}

double lower_series(double k, double x) {
  double term = 1.0 / k;
  double sum = term;
  for (int n = 1; n < kMaxIter; ++n) {
    term *= x / (k + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(log_prefactor(k, x));
}

double upper_fraction(double k, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - k;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - k);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(log_prefactor(k, x)) * h;
}

}  // namespace

double regularized_lower_gamma(double k, double x) {
  if (!(k > 0.0) || !(x >= 0.0)) {
    throw InvalidArgument("regularized_lower_gamma: need k > 0 and x >= 0 (k=" + std::to_string(k) +
                          ", x=" + std::to_string(x) + ")");
  }
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < k + 1.0) return std::min(1.0, lower_series(k, x));
  return std::max(0.0, 1.0 - upper_fraction(k, x));
}

double gamma_pdf(const GammaParams& p, double x) {
  check_params(p);
  if (x < 0.0) return 0.0;
  const double k = p.shape();
  const double theta = p.scale();
  if (x == 0.0) {
    if (k < 1.0) return std::numeric_limits<double>::infinity();
    return k == 1.0 ? 1.0 / theta : 0.0;
  }
  const double y = x / theta;
  return std::exp(log_prefactor(k, y)) / x;
}

double gamma_cdf(const GammaParams& p, double x) {
  check_params(p);
  if (!(x >= 0.0)) throw InvalidArgument("gamma_cdf: x must be nonnegative");
  return regularized_lower_gamma(p.shape(), x / p.scale());
}

double gamma_cdf_inverse(const GammaParams& p, double q) {
  check_params(p);
  if (!(q >= 0.0) || !(q < 1.0)) {
    throw InvalidArgument("gamma_cdf_inverse: level must lie in [0, 1), got " + std::to_string(q));
  }
  if (q == 0.0) return 0.0;

  double lo = 0.0;
  double hi = p.mean + 20.0 * std::sqrt(p.variance);
  while (gamma_cdf(p, hi) < q) {
    lo = hi;
    hi *= 2.0;
  }

  double x = std::clamp(p.mean, lo, hi);
  for (int iter = 0; iter < 400; ++iter) {
    const double f = gamma_cdf(p, x) - q;
    if (std::abs(f) <= 1e-13) return x;
    if (f < 0.0) lo = x; else hi = x;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return x;

    const double dens = gamma_pdf(p, x);
    double next = (dens > 0.0 && std::isfinite(dens)) ? x - f / dens : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  return x;
}

}  // namespace tomoci
