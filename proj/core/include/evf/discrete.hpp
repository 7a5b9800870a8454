#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace evf {

struct BinomialSpec {
  long long trials = 0;   // m >= 0
  double p = 0.0;         // in [0,1]
};

// log pmf of binomial(m, p) at k, from log-gamma (stable up to huge m).
double log_binomial_pmf(long long k, long long m, double p);

// P(Y <= y). Near either tail the pmf terms are summed directly (recurrence
// from a log-gamma anchor, compensated addition); deep in the body the
// regularized incomplete beta continued fraction is used instead.
double pbinom(long long y, const BinomialSpec& spec);
double pbinom(long long y, long long m, double p);

// Smallest y with P(Y <= y) >= q; q <= 0 gives 0, q >= 1 gives the top of
// the support. Bracketed from a normal-approximation guess, then bisected.
long long qbinom(double q, const BinomialSpec& spec);
long long qbinom(double q, long long m, double p);

struct PoibinSpec {
  std::vector<double> probs;        // p_s in [0,1]
  std::vector<long long> weights;   // w_s >= 0, same length
};

// Sum of independent binomial(w_s, p_s) components. The pmf is materialized
// once by dense convolution in probability space, component by component,
// renormalizing each step; negligible tail bins (cumulative mass < ~1e-17)
// are truncated into end buckets so the support can be large.
class PoibinDist {
 public:
  explicit PoibinDist(const PoibinSpec& spec);
  PoibinDist(std::span<const double> probs, std::span<const long long> weights);

  double cdf(long long y) const;
  long long quantile(double q) const;

  long long total_weight() const { return total_weight_; }
  // Top of the support actually reachable: sum of w_s over p_s > 0.
  long long support_max() const { return support_max_; }
  // Largest |sum(pmf) - 1| observed before any renormalization step.
  double normalization_drift() const { return drift_; }

 private:
  void build(std::span<const double> probs, std::span<const long long> weights);

  long long total_weight_ = 0;
  long long support_max_ = 0;
  long long lo_ = 0;                // first materialized count
  std::vector<double> cdf_;         // cumulative over [lo_, lo_ + size)
  double below_ = 0.0;              // truncated mass strictly below lo_
  double above_ = 0.0;              // truncated mass above the stored band
  double drift_ = 0.0;
};

double ppoibin(long long y, const PoibinSpec& spec);
long long qpoibin(double q, const PoibinSpec& spec);

}  // namespace evf
