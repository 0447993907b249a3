#pragma once

namespace tomoci {

// Gamma distribution parameterized by its mean and variance:
// shape k = mean^2 / variance, scale theta = variance / mean.
struct GammaParams {
  double mean;
  double variance;

  double shape() const { return mean * mean / variance; }
  double scale() const { return variance / mean; }
};

// P(k, x) = gamma(k, x) / Gamma(k). Series for x < k + 1, Lentz continued
// fraction for the upper tail otherwise.
double regularized_lower_gamma(double k, double x);

double gamma_pdf(const GammaParams& p, double x);
double gamma_cdf(const GammaParams& p, double x);

// Smallest x with |gamma_cdf(p, x) - q| <= 1e-10; q must lie in [0, 1).
// Bracketed Newton with bisection fallback.
double gamma_cdf_inverse(const GammaParams& p, double q);

}  // namespace tomoci
