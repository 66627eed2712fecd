#pragma once

// Rate of heuristic flaw over sibling positions:
//
//   rhf = Pr{ Win(n) | Loss(m) & e(m) >= e(n) }
//
// estimated by tallying, over ordered pairs of distinct children (m, n) of
// sampled positions c, the event F = "Loss(m) & e(m) >= e(n)" and the joint
// event "F & Win(n)". Win and Loss are taken for the player to move at c.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "kalahlab/engine.hpp"
#include "kalahlab/solver.hpp"

namespace kalahlab {

// e(child) as seen by the player who moved into it.
using SiblingEvaluator =
    std::function<double(const Board& child, Player parent_mover)>;

// KalahAdvantage from the parent mover's side.
SiblingEvaluator AdvantageSiblingEvaluator();

struct FlawTally {
  std::uint64_t f_count = 0;
  std::uint64_t fwin_count = 0;

  FlawTally& operator+=(const FlawTally& o) {
    f_count += o.f_count;
    fwin_count += o.fwin_count;
    return *this;
  }
};

// Tallies every ordered pair of distinct children of `parent`. Equal
// evaluations count in both orders. Zero tally for terminal parents.
FlawTally TallySiblingFlaws(const Board& parent, Variant variant,
                            SolveCache& cache,
                            const SiblingEvaluator& evaluator);

struct RhfEstimate {
  std::uint64_t f_count = 0;
  std::uint64_t fwin_count = 0;
  std::uint64_t boards_used = 0;
  std::uint64_t boards_discarded = 0;

  // nullopt when F never occurred.
  std::optional<double> rhf() const {
    if (f_count == 0) return std::nullopt;
    return static_cast<double>(fwin_count) / static_cast<double>(f_count);
  }
};

// Board i is advanced by RandomPrefix with the generator seeded from
// Rng::Derive(seed, "prefix", i); boards whose prefix ends the game, or
// leaves a terminal position, are discarded. An empty evaluator means
// AdvantageSiblingEvaluator(). Throws std::invalid_argument on empty input.
RhfEstimate EstimateRhf(std::span<const Board> boards, Variant variant,
                        int prefix_len, std::uint64_t seed, SolveCache& cache,
                        const SiblingEvaluator& evaluator = {});

// Empirical check of
//   Pr{Win(c) | e(m)>=e(n)} =
//       Pr{Win(m) | .} + Pr{Loss(m) | .} * Pr{Win(n) | Loss(m) & .}
// over binary positions c (exactly two children m, n).
struct DecompositionSide {
  std::uint64_t samples = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  // sqrt(lhs (1 - lhs) / samples)
  double lhs_std_error = 0.0;

  double gap() const { return lhs > rhs ? lhs - rhs : rhs - lhs; }
};

struct DecompositionReport {
  // Every qualifying ordered (c, m, n) sample.
  DecompositionSide all;
  // Samples in which none of c, m, n is a tie.
  DecompositionSide tie_free;
  double tie_fraction = 0.0;
  std::uint64_t positions = 0;

  bool empty() const { return all.samples == 0; }
};

// Samples positions like EstimateRhf (same sub-seeding, purpose
// "decomposition") and keeps those with exactly two children.
DecompositionReport VerifyDecomposition(std::span<const Board> boards,
                                        Variant variant, int prefix_len,
                                        std::uint64_t seed,
                                        SolveCache& cache);

}  // namespace kalahlab
