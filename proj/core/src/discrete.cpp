#include "evf/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "evf/distributions.hpp"

namespace evf {

namespace {

// Kahan-Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

// Terms this small relative to the running sum cannot move the result.
constexpr double kTermCutoff = 1e-22;

// Number of tail terms below which direct summation is used.
constexpr long long kSumThreshold = 512;

double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 400;
  constexpr double kEps = 3e-16;
  constexpr double kFpMin = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

// Regularized incomplete beta I_x(a, b) with the logs of x and 1-x supplied
// by the caller (they are known exactly from p in the binomial use).
double ibeta(double a, double b, double x, double log_x, double log1m_x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_bt =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * log_x + b * log1m_x;
  const double bt = std::exp(log_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return bt * betacf(a, b, x) / a;
  }
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

// Sum pmf terms for k in [k_from, k_to] starting the recurrence at an anchor
// inside the range where the pmf is largest, walking outward so terms only
// decay and early exit is safe.
double sum_pmf_range(long long k_from, long long k_to, long long m, double p) {
  if (k_from > k_to) return 0.0;
  const long long mode = std::clamp<long long>(
      static_cast<long long>(std::floor((static_cast<double>(m) + 1.0) * p)), 0, m);
  const long long anchor = std::clamp(mode, k_from, k_to);
  const double log_anchor = log_binomial_pmf(anchor, m, p);
  const double anchor_term = std::exp(log_anchor);
  const double odds = p / (1.0 - p);

  CompensatedSum acc;
  acc.add(anchor_term);
  double term = anchor_term;
  for (long long k = anchor; k > k_from; --k) {
    // pmf(k-1) = pmf(k) * k / ((m-k+1) * odds)
    term *= static_cast<double>(k) / (static_cast<double>(m - k + 1) * odds);
    acc.add(term);
    if (term < kTermCutoff * std::abs(acc.sum)) break;
  }
  term = anchor_term;
  for (long long k = anchor; k < k_to; ++k) {
    // pmf(k+1) = pmf(k) * (m-k) * odds / (k+1)
    term *= static_cast<double>(m - k) * odds / static_cast<double>(k + 1);
    acc.add(term);
    if (term < kTermCutoff * std::abs(acc.sum)) break;
  }
  return acc.value();
}

}  // namespace

double log_binomial_pmf(long long k, long long m, double p) {
  if (k < 0 || k > m) return -std::numeric_limits<double>::infinity();
  if (p <= 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return k == m ? 0.0 : -std::numeric_limits<double>::infinity();
  const double md = static_cast<double>(m);
  const double kd = static_cast<double>(k);
  return std::lgamma(md + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(md - kd + 1.0) +
         kd * std::log(p) + (md - kd) * std::log1p(-p);
}

double pbinom(long long y, long long m, double p) {
  if (m < 0) throw std::invalid_argument("binomial trial count must be >= 0");
  if (!(p >= 0.0) || !(p <= 1.0))
    throw std::invalid_argument("binomial probability must be in [0,1]");
  if (y < 0) return 0.0;
  if (y >= m) return 1.0;
  if (p == 0.0) return 1.0;
  if (p == 1.0) return 0.0;  // y < m here

  const long long low_terms = y + 1;
  const long long high_terms = m - y;
  if (std::min(low_terms, high_terms) <= kSumThreshold) {
    if (low_terms <= high_terms) {
      return std::min(1.0, sum_pmf_range(0, y, m, p));
    }
    return std::max(0.0, 1.0 - sum_pmf_range(y + 1, m, m, p));
  }
  const double a = static_cast<double>(m - y);
  const double b = static_cast<double>(y + 1);
  double v = ibeta(a, b, 1.0 - p, std::log1p(-p), std::log(p));
  return std::clamp(v, 0.0, 1.0);
}

double pbinom(long long y, const BinomialSpec& spec) {
  return pbinom(y, spec.trials, spec.p);
}

long long qbinom(double q, long long m, double p) {
  if (m < 0) throw std::invalid_argument("binomial trial count must be >= 0");
  if (!(p >= 0.0) || !(p <= 1.0))
    throw std::invalid_argument("binomial probability must be in [0,1]");
  if (q <= 0.0 || m == 0 || p == 0.0) return 0;
  if (q >= 1.0) return m;
  if (p == 1.0) return m;

  const double mean = static_cast<double>(m) * p;
  const double sd = std::sqrt(mean * (1.0 - p));
  const double z = standard_quantile(LlsFamily::kNormal, q);
  long long guess = std::clamp<long long>(
      static_cast<long long>(std::llround(mean + z * sd)), 0, m);

  long long lo;   // cdf(lo) < q, or lo == -1
  long long hi;   // cdf(hi) >= q
  if (pbinom(guess, m, p) >= q) {
    hi = guess;
    lo = guess - 1;
    long long step = 1;
    while (lo >= 0 && pbinom(lo, m, p) >= q) {
      hi = lo;
      lo -= step;
      step *= 2;
    }
  } else {
    lo = guess;
    hi = guess + 1;
    long long step = 1;
    while (hi < m && pbinom(hi, m, p) < q) {
      lo = hi;
      hi = std::min(m, hi + step);
      step *= 2;
    }
  }
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (pbinom(mid, m, p) >= q) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

long long qbinom(double q, const BinomialSpec& spec) {
  return qbinom(q, spec.trials, spec.p);
}

PoibinDist::PoibinDist(const PoibinSpec& spec) {
  build(spec.probs, spec.weights);
}

PoibinDist::PoibinDist(std::span<const double> probs, std::span<const long long> weights) {
  build(probs, weights);
}

void PoibinDist::build(std::span<const double> probs, std::span<const long long> weights) {
  if (probs.size() != weights.size() || probs.empty())
    throw std::invalid_argument("poisson-binomial: probs/weights must be nonempty and equal length");
  for (std::size_t s = 0; s < probs.size(); ++s) {
    if (!(probs[s] >= 0.0) || !(probs[s] <= 1.0))
      throw std::invalid_argument("poisson-binomial: probability outside [0,1]");
    if (weights[s] < 0)
      throw std::invalid_argument("poisson-binomial: negative weight");
    total_weight_ += weights[s];
    if (probs[s] > 0.0) support_max_ += weights[s];
  }

  std::vector<double> pmf{1.0};
  lo_ = 0;
  constexpr double kBinCutoff = 1e-22;   // per-bin truncation inside a component
  constexpr double kBandCutoff = 1e-17;  // cumulative truncation of the running pmf

  std::vector<double> comp;
  std::vector<double> next;
  for (std::size_t s = 0; s < probs.size(); ++s) {
    const long long w = weights[s];
    const double p = probs[s];
    if (w == 0 || p == 0.0) continue;
    if (p == 1.0) {
      lo_ += w;  // degenerate component: pure shift
      continue;
    }

    // Banded pmf of binomial(w, p): recurrence outward from the mode.
    const long long mode = std::clamp<long long>(
        static_cast<long long>(std::floor((static_cast<double>(w) + 1.0) * p)), 0, w);
    const double odds = p / (1.0 - p);
    const double mode_term = std::exp(log_binomial_pmf(mode, w, p));
    long long klo = mode;
    long long khi = mode;
    comp.assign(1, mode_term);
    double term = mode_term;
    while (klo > 0) {
      term *= static_cast<double>(klo) / (static_cast<double>(w - klo + 1) * odds);
      if (term < kBinCutoff && klo < mode) break;
      comp.insert(comp.begin(), term);
      --klo;
    }
    term = mode_term;
    while (khi < w) {
      term *= static_cast<double>(w - khi) * odds / static_cast<double>(khi + 1);
      if (term < kBinCutoff && khi > mode) break;
      comp.push_back(term);
      ++khi;
    }

    next.assign(pmf.size() + comp.size() - 1, 0.0);
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      const double v = pmf[i];
      if (v == 0.0) continue;
      for (std::size_t k = 0; k < comp.size(); ++k) {
        next[i + k] += v * comp[k];
      }
    }
    pmf.swap(next);
    lo_ += klo;

    // Trim negligible band edges into the end buckets.
    double trimmed = 0.0;
    std::size_t front = 0;
    while (front + 1 < pmf.size() && trimmed + pmf[front] < kBandCutoff) {
      trimmed += pmf[front];
      ++front;
    }
    below_ += trimmed;
    trimmed = 0.0;
    std::size_t back = pmf.size();
    while (back > front + 1 && trimmed + pmf[back - 1] < kBandCutoff) {
      trimmed += pmf[back - 1];
      --back;
    }
    above_ += trimmed;
    if (front > 0 || back < pmf.size()) {
      pmf.assign(pmf.begin() + static_cast<std::ptrdiff_t>(front),
                 pmf.begin() + static_cast<std::ptrdiff_t>(back));
      lo_ += static_cast<long long>(front);
    }

    CompensatedSum total;
    total.add(below_);
    total.add(above_);
    for (double v : pmf) total.add(v);
    const double mass = total.value();
    drift_ = std::max(drift_, std::abs(mass - 1.0));
    if (drift_ > 1e-9)
      throw std::runtime_error("poisson-binomial convolution drifted beyond 1e-9");
    const double scale = 1.0 / mass;
    below_ *= scale;
    above_ *= scale;
    for (double& v : pmf) v *= scale;
  }

  cdf_.resize(pmf.size());
  CompensatedSum running;
  running.add(below_);
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    running.add(pmf[i]);
    cdf_[i] = std::min(1.0, running.value());
  }
}

double PoibinDist::cdf(long long y) const {
  if (y < 0) return 0.0;
  if (y < lo_) return below_;
  const long long idx = y - lo_;
  if (idx < static_cast<long long>(cdf_.size())) return cdf_[static_cast<std::size_t>(idx)];
  return y >= support_max_ ? 1.0 : cdf_.back();
}

long long PoibinDist::quantile(double q) const {
  if (!(q >= 0.0) || !(q <= 1.0))
    throw std::invalid_argument("poisson-binomial quantile level must be in [0,1]");
  if (q <= below_) return std::min<long long>(0, support_max_) == 0 ? 0 : lo_;
  if (q > cdf_.back()) return support_max_;
  const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), q);
  return lo_ + static_cast<long long>(it - cdf_.begin());
}

double ppoibin(long long y, const PoibinSpec& spec) {
  return PoibinDist(spec).cdf(y);
}

long long qpoibin(double q, const PoibinSpec& spec) {
  return PoibinDist(spec).quantile(q);
}

}  // namespace evf
