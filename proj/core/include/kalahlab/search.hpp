#pragma once

// Depth-limited game-tree search under the minimax and product back-up
// rules. Values are always expressed from the root player's point of view;
// a node is a MAX node iff the root player is to move there, so a go-again
// produces two consecutive nodes of the same kind.

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>

#include "kalahlab/engine.hpp"

namespace kalahlab {

enum class BackupRule : std::uint8_t { kMinimax, kProduct };

std::string_view RuleName(BackupRule rule);

enum class NodeKind : std::uint8_t { kMax, kMin };

struct SearchResult {
  Move chosen;
  double value = 0.0;
  std::uint64_t nodes_expanded = 0;
  int depth = 1;
};

// Value of a nonterminal depth-limit position for `root`. For the product
// rule it must be a win probability in [0, 1].
using TipEvaluator = std::function<double(const Board& board, Player root)>;

// Store difference: perspective's store minus the other store.
int KalahAdvantage(const Board& board, Player perspective);

// 0.5 + advantage / (2 * total_stones).
double ToWinProb(int advantage, int total_stones);

// MINIMAX: max or min. PRODUCT: 1 - prod(1 - v) at MAX nodes, prod(v) at MIN
// nodes; throws std::invalid_argument if a value lies outside [0, 1].
double Backup(std::span<const double> values, NodeKind kind, BackupRule rule);

// Denominator of the product-rule probability map. kTotalStones is
// ToWinProb(a, T); kRemainingStones uses the stones still in pits, R, and
// clamps 0.5 + a / (2R) to [0, 1].
enum class ProbabilityScale : std::uint8_t { kTotalStones, kRemainingStones };

std::string_view ScaleName(ProbabilityScale scale);
// Accepts "total" and "remaining".
ProbabilityScale ParseScale(std::string_view name);

// KalahAdvantage for MINIMAX, the probability map of it for PRODUCT.
TipEvaluator DefaultEvaluator(BackupRule rule,
                              ProbabilityScale scale =
                                  ProbabilityScale::kTotalStones);

// Searches `depth` plies (each move, go-again continuations and SKIP
// included, is one ply). Terminal positions are scored exactly: +-(T+1)
// or 0 under MINIMAX, 1/0/0.5 under PRODUCT, T being the total stone count.
// Returns the lowest-index move among those with the highest backed-up
// value. An empty `evaluator` selects DefaultEvaluator(rule).
// Throws std::logic_error on a terminal board.
SearchResult ChooseMove(const Board& board, Variant variant, BackupRule rule,
                        int depth, const TipEvaluator& evaluator = {});

}  // namespace kalahlab
