#include "evf/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace evf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log(sqrt(2*pi))

double normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

double normal_log_pdf(double z) { return -0.5 * z * z - kLogSqrt2Pi; }

// log of the upper tail; erfc keeps full relative accuracy far out.
double normal_log_survival(double z) {
  double s = 0.5 * std::erfc(z / kSqrt2);
  if (s > 0) return std::log(s);
  // erfc underflows near z ~ 38.6; fall back to the asymptotic expansion.
  return -0.5 * z * z - kLogSqrt2Pi - std::log(z);
}

// Acklam's rational approximation followed by one Newton step against the
// erfc-based cdf; the refined result is accurate to a few ulps.
double normal_quantile(double q) {
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (q < p_low) {
    double u = std::sqrt(-2.0 * std::log(q));
    x = (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  } else if (q <= 1.0 - p_low) {
    double u = q - 0.5;
    double r = u * u;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double u = std::sqrt(-2.0 * std::log1p(-q));
    x = -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  }
  double err = normal_cdf(x) - q;
  x -= err * std::exp(0.5 * x * x + kLogSqrt2Pi);
  return x;
}

}  // namespace

LlsFamily family_from_name(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "weibull" || lower == "sev") return LlsFamily::kSmallestExtremeValue;
  if (lower == "lognormal" || lower == "normal") return LlsFamily::kNormal;
  if (lower == "frechet" || lower == "lev") return LlsFamily::kLargestExtremeValue;
  throw std::invalid_argument("unknown distribution family: " + std::string(name) +
                              " (expected weibull, lognormal, or frechet)");
}

std::string family_name(LlsFamily family) {
  switch (family) {
    case LlsFamily::kSmallestExtremeValue: return "weibull";
    case LlsFamily::kNormal: return "lognormal";
    case LlsFamily::kLargestExtremeValue: return "frechet";
  }
  return "?";
}

LlsParams LlsParams::from_weibull(double eta, double beta) {
  if (!(eta > 0) || !(beta > 0))
    throw std::domain_error("weibull parameters must be positive");
  return LlsParams{std::log(eta), 1.0 / beta};
}

double LlsParams::eta() const { return std::exp(mu); }

double LlsParams::beta() const { return 1.0 / sigma; }

double standard_cdf(LlsFamily family, double z) {
  switch (family) {
    case LlsFamily::kSmallestExtremeValue: return -std::expm1(-std::exp(z));
    case LlsFamily::kNormal: return normal_cdf(z);
    case LlsFamily::kLargestExtremeValue: return std::exp(-std::exp(-z));
  }
  return 0.0;
}

double standard_log_pdf(LlsFamily family, double z) {
  switch (family) {
    case LlsFamily::kSmallestExtremeValue: return z - std::exp(z);
    case LlsFamily::kNormal: return normal_log_pdf(z);
    case LlsFamily::kLargestExtremeValue: return -z - std::exp(-z);
  }
  return -kInf;
}

double standard_log_survival(LlsFamily family, double z) {
  switch (family) {
    case LlsFamily::kSmallestExtremeValue: return -std::exp(z);
    case LlsFamily::kNormal: return normal_log_survival(z);
    case LlsFamily::kLargestExtremeValue: {
      // log(1 - exp(-exp(-z)))
      double t = std::exp(-z);
      if (t == 0.0) return -kInf;
      double one_minus = -std::expm1(-t);
      return std::log(one_minus);
    }
  }
  return -kInf;
}

double standard_quantile(LlsFamily family, double q) {
  switch (family) {
    case LlsFamily::kSmallestExtremeValue: return std::log(-std::log1p(-q));
    case LlsFamily::kNormal: return normal_quantile(q);
    case LlsFamily::kLargestExtremeValue: return -std::log(-std::log(q));
  }
  return 0.0;
}

namespace {

double standardize(const LlsParams& params, double t) {
  if (!(t > 0)) throw std::domain_error("time must be positive");
  if (!(params.sigma > 0)) throw std::domain_error("sigma must be positive");
  return (std::log(t) - params.mu) / params.sigma;
}

}  // namespace

double cdf(LlsFamily family, const LlsParams& params, double t) {
  return standard_cdf(family, standardize(params, t));
}

double pdf(LlsFamily family, const LlsParams& params, double t) {
  return std::exp(log_pdf(family, params, t));
}

double log_pdf(LlsFamily family, const LlsParams& params, double t) {
  double z = standardize(params, t);
  return standard_log_pdf(family, z) - std::log(params.sigma) - std::log(t);
}

double log_survival(LlsFamily family, const LlsParams& params, double t) {
  return standard_log_survival(family, standardize(params, t));
}

double quantile(LlsFamily family, const LlsParams& params, double q) {
  if (!(q > 0) || !(q < 1)) throw std::domain_error("quantile level must be in (0,1)");
  if (!(params.sigma > 0)) throw std::domain_error("sigma must be positive");
  return std::exp(params.mu + params.sigma * standard_quantile(family, q));
}

std::vector<double> sample(LlsFamily family, const LlsParams& params,
                           std::size_t n, Rng& rng) {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(quantile(family, params, rng.next_unit()));
  }
  return out;
}

}  // namespace evf
