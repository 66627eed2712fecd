#pragma once

// Paired-game tournaments between the minimax and product back-up rules.
//
// Each initial board is played twice, once with each rule seated as the
// first mover. A pair is critical when one rule wins both games; only
// critical pairs count toward the score.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "kalahlab/engine.hpp"
#include "kalahlab/search.hpp"
#include "kalahlab/stats.hpp"

namespace kalahlab {

enum class PairOutcome : std::uint8_t {
  kMinimaxBetter,
  kProductBetter,
  kNotCritical,
};

std::string_view PairOutcomeName(PairOutcome o);

struct GameRecord {
  std::vector<Move> moves;
  Board final_board;
  // For the player who moved first.
  GameValue result;
  bool repetition = false;
};

// The engine owning the player to move searches with its rule at `depth`;
// the first rule plays for board.to_move(). A repeated (board, to_move) is
// adjudicated as a tie. `scale` selects the product engine's tip map.
GameRecord PlayGameLogged(
    const Board& board, Variant variant, BackupRule first_rule,
    BackupRule second_rule, int depth,
    ProbabilityScale scale = ProbabilityScale::kTotalStones);
GameValue PlayGame(const Board& board, Variant variant, BackupRule first_rule,
                   BackupRule second_rule, int depth,
                   ProbabilityScale scale = ProbabilityScale::kTotalStones);

// Game A: minimax first. Game B: product first.
PairOutcome ClassifyPair(const GameValue& minimax_first,
                         const GameValue& product_first);
PairOutcome PlayPair(const Board& board, Variant variant, int depth,
                     ProbabilityScale scale = ProbabilityScale::kTotalStones);

struct ContestRow {
  Variant variant = Variant::kStandard;
  int depth = 0;
  std::int64_t pairs_examined = 0;
  std::int64_t minimax_better = 0;
  double pct = 0.0;
  double p_value = 1.0;
  Conclusion conclusion = Conclusion::kNotSignificant;
  std::int64_t boards_consumed = 0;
  // No critical pair was found in the whole board list.
  bool degenerate = false;
};

// Derived columns (pct, p-value, conclusion) from the raw counts.
ContestRow MakeContestRow(Variant variant, int depth,
                          std::int64_t pairs_examined,
                          std::int64_t minimax_better,
                          std::int64_t boards_consumed, double alpha,
                          TailMethod method = TailMethod::kNormal);

struct ContestOptions {
  double alpha = 0.05;
  int min_critical = 100;
  TailMethod method = TailMethod::kNormal;
  ProbabilityScale scale = ProbabilityScale::kTotalStones;
};

// Plays boards in order. After every critical pair, once at least
// min_critical have been seen, stops if the one-tailed p-value is below
// alpha. The p-value is not corrected for this optional stopping.
ContestRow RunContest(std::span<const Board> boards, Variant variant,
                      int depth, const ContestOptions& options = {});

}  // namespace kalahlab
