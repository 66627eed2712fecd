#include "kalahlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kalahlab {

std::string_view ConclusionName(Conclusion c) {
  switch (c) {
    case Conclusion::kMinimaxBetter:
      return "minimax is better";
    case Conclusion::kProductBetter:
      return "product is better";
    case Conclusion::kNotSignificant:
      return "not significant";
  }
  return "?";
}

Conclusion ParseConclusion(std::string_view name) {
  for (Conclusion c : {Conclusion::kMinimaxBetter, Conclusion::kProductBetter,
                       Conclusion::kNotSignificant}) {
    if (name == ConclusionName(c)) return c;
  }
  throw std::invalid_argument("unknown conclusion '" + std::string(name) +
                              "'");
}

double NormalUpperTail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

namespace {

void Validate(std::int64_t k, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("one-tailed test needs n >= 1");
  if (k < 0 || k > n) throw std::invalid_argument("k must lie in [0, n]");
}

double LogChoose(std::int64_t n, std::int64_t k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
         std::lgamma(n - k + 1.0);
}

// Pr{X >= k} for X ~ Binomial(n, 1/2), by log-sum-exp over the tail terms.
double BinomialUpperTail(std::int64_t k, std::int64_t n) {
  if (k <= 0) return 1.0;
  const double log_half_n = n * std::log(0.5);
  double peak = -INFINITY;
  for (std::int64_t i = k; i <= n; ++i) {
    peak = std::max(peak, LogChoose(n, i) + log_half_n);
  }
  double sum = 0.0;
  for (std::int64_t i = k; i <= n; ++i) {
    sum += std::exp(LogChoose(n, i) + log_half_n - peak);
  }
  return std::min(1.0, std::exp(peak) * sum);
}

}  // namespace

double OneTailedP(std::int64_t k, std::int64_t n, TailMethod method) {
  Validate(k, n);
  const bool high = 2 * k >= n;
  if (method == TailMethod::kNormal) {
    const double z = (k - n / 2.0) / (std::sqrt(static_cast<double>(n)) / 2.0);
    return high ? NormalUpperTail(z) : NormalUpperTail(-z);
  }
  // Pr{X <= k} = Pr{X >= n - k} by symmetry of p = 1/2.
  return high ? BinomialUpperTail(k, n) : BinomialUpperTail(n - k, n);
}

TestResult BinomialTest(std::int64_t k, std::int64_t n) {
  Validate(k, n);
  TestResult r;
  r.k = k;
  r.n = n;
  r.direction = 2 * k >= n ? Direction::kHigh : Direction::kLow;
  r.p_normal = OneTailedP(k, n, TailMethod::kNormal);
  r.p_exact = OneTailedP(k, n, TailMethod::kExact);
  return r;
}

Conclusion Conclude(std::int64_t k, std::int64_t n, double alpha,
                    TailMethod method) {
  if (OneTailedP(k, n, method) >= alpha || 2 * k == n) {
    return Conclusion::kNotSignificant;
  }
  return 2 * k > n ? Conclusion::kMinimaxBetter : Conclusion::kProductBetter;
}

TwoProportionResult TwoProportionZ(std::int64_t k1, std::int64_t n1,
                                   std::int64_t k2, std::int64_t n2) {
  Validate(k1, n1);
  Validate(k2, n2);
  TwoProportionResult r;
  r.p1 = static_cast<double>(k1) / n1;
  r.p2 = static_cast<double>(k2) / n2;
  const double pooled = static_cast<double>(k1 + k2) / (n1 + n2);
  const double se =
      std::sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2));
  if (se == 0.0) {
    r.z = 0.0;
    r.p_value = r.p1 > r.p2 ? 0.0 : 1.0;
    return r;
  }
  r.z = (r.p1 - r.p2) / se;
  r.p_value = NormalUpperTail(r.z);
  return r;
}

}  // namespace kalahlab
