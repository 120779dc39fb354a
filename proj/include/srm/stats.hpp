#pragma once

#include <cmath>
#include <limits>

#include "srm/error.hpp"

namespace srm {

inline constexpr double kLogTwoPi = 1.8378770664093454836;
inline constexpr double kSqrtTwo = 1.4142135623730950488;

// Standard normal CDF. erfc keeps the lower tail accurate; absolute error
// is well below 1e-14 across the double range.
inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / kSqrtTwo); }

// Upper tail P(Z >= x) without cancellation.
inline double norm_sf(double x) { return 0.5 * std::erfc(x / kSqrtTwo); }

inline double norm_logpdf(double z) { return -0.5 * (kLogTwoPi + z * z); }

// log Phi(x), switching to a Mills-ratio expansion deep in the lower tail
// where erfc underflows.
inline double norm_logcdf(double x) {
  if (x > -37.0) {
    double p = norm_cdf(x);
    if (p > 0.0) return std::log(p);
  }
  double x2 = x * x;
  return -0.5 * x2 - 0.5 * kLogTwoPi - std::log(-x) +
         std::log1p(-1.0 / x2 + 3.0 / (x2 * x2));
}

// Inverse standard normal CDF, Wichura's AS 241 (PPND16 precision).
inline double norm_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    throw Error(errc::internal, "norm_quantile: p outside [0,1]");
  }
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                 6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
               1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
             1.3314166789178437745e+2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                 3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
               5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
             4.2313330701600911252e+1) * r + 1.0);
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double z;
  if (r <= 5.0) {
    r -= 1.6;
    z = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    z = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
  }
  return (q < 0.0) ? -z : z;
}

inline double normal_logpdf(double x, double mean, double var) {
  const double d = x - mean;
  return -0.5 * (kLogTwoPi + std::log(var) + d * d / var);
}

// Log density of a zero-mean exchangeable bivariate normal with equal
// diagonal `var` and off-diagonal `cov`.
inline double dyad_pair_logpdf(double e1, double e2, double var, double cov) {
  const double det = var * var - cov * cov;
  if (!(det > 0.0) || !(var > 0.0)) return -std::numeric_limits<double>::infinity();
  const double quad = (var * (e1 * e1 + e2 * e2) - 2.0 * cov * e1 * e2) / det;
  return -kLogTwoPi - 0.5 * std::log(det) - 0.5 * quad;
}

// Log density of an inverse-gamma(shape, rate) evaluated at v (up to nothing:
// full normalizing constant included).
inline double inv_gamma_logpdf(double v, double shape, double rate) {
  if (!(v > 0.0)) return -std::numeric_limits<double>::infinity();
  return shape * std::log(rate) - std::lgamma(shape) -
         (shape + 1.0) * std::log(v) - rate / v;
}

inline double poisson_logpmf(double y, double log_rate) {
  return y * log_rate - std::exp(log_rate) - std::lgamma(y + 1.0);
}

}  // namespace srm
