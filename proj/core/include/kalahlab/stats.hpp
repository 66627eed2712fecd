#pragma once

// One-tailed tests against the null hypothesis of a fair coin.

#include <cstdint>
#include <string_view>

namespace kalahlab {

enum class TailMethod : std::uint8_t { kNormal, kExact };
enum class Direction : std::uint8_t { kHigh, kLow };

enum class Conclusion : std::uint8_t {
  kMinimaxBetter,
  kProductBetter,
  kNotSignificant,
};

std::string_view ConclusionName(Conclusion c);
Conclusion ParseConclusion(std::string_view name);

struct TestResult {
  std::int64_t k = 0;
  std::int64_t n = 0;
  Direction direction = Direction::kHigh;
  double p_normal = 1.0;
  double p_exact = 1.0;
};

// Upper tail Pr{Z >= z} of the standard normal, via std::erfc.
double NormalUpperTail(double z);

// Tail toward the observed side: HIGH if k >= n/2, else LOW.
// NORMAL uses z = (k - n/2) / (sqrt(n)/2) with no continuity correction.
// EXACT sums Binomial(n, 1/2) terms in log space.
// Throws std::invalid_argument unless n >= 1 and 0 <= k <= n.
double OneTailedP(std::int64_t k, std::int64_t n,
                  TailMethod method = TailMethod::kNormal);

TestResult BinomialTest(std::int64_t k, std::int64_t n);

// k counts pairs won by minimax out of n critical pairs.
Conclusion Conclude(std::int64_t k, std::int64_t n, double alpha,
                    TailMethod method = TailMethod::kNormal);

// One-tailed pooled two-proportion z-test of H1: k1/n1 > k2/n2. The two
// samples are treated as independent.
struct TwoProportionResult {
  double p1 = 0.0;
  double p2 = 0.0;
  double z = 0.0;
  double p_value = 1.0;
};
TwoProportionResult TwoProportionZ(std::int64_t k1, std::int64_t n1,
                                   std::int64_t k2, std::int64_t n2);

}  // namespace kalahlab
