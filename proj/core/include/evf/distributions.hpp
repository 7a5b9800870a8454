#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "evf/random.hpp"

namespace evf {

// Log-location-scale families: F(t) = Phi[(log t - mu)/sigma] with Phi the
// standard cdf of the family. The time-scale names map to the standard cdfs
// as weibull -> smallest extreme value, lognormal -> normal,
// frechet -> largest extreme value.
enum class LlsFamily {
  kSmallestExtremeValue,  // weibull
  kNormal,                // lognormal
  kLargestExtremeValue,   // frechet
};

LlsFamily family_from_name(std::string_view name);  // case-insensitive
std::string family_name(LlsFamily family);

// Location/scale pair on the log-time axis. sigma > 0 is required by every
// operation that consumes it. The Weibull (eta, beta) view is eta = exp(mu),
// beta = 1/sigma.
struct LlsParams {
  double mu = 0.0;
  double sigma = 1.0;

  static LlsParams from_weibull(double eta, double beta);
  double eta() const;
  double beta() const;
};

// Standard-scale functions (location 0, scale 1).
double standard_cdf(LlsFamily family, double z);
double standard_log_pdf(LlsFamily family, double z);
double standard_log_survival(LlsFamily family, double z);
double standard_quantile(LlsFamily family, double q);

// Time-scale functions. cdf/pdf/log_pdf require t > 0; quantile requires
// q in (0,1). Violations throw std::domain_error.
double cdf(LlsFamily family, const LlsParams& params, double t);
double pdf(LlsFamily family, const LlsParams& params, double t);
double log_pdf(LlsFamily family, const LlsParams& params, double t);
double log_survival(LlsFamily family, const LlsParams& params, double t);
double quantile(LlsFamily family, const LlsParams& params, double q);

// n inverse-cdf draws from the stream. Deterministic given the stream state.
std::vector<double> sample(LlsFamily family, const LlsParams& params,
                           std::size_t n, Rng& rng);

}  // namespace evf
