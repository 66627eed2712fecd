#include "kalahlab/contest.hpp"

#include <stdexcept>

#include <absl/container/flat_hash_set.h>

namespace kalahlab {

std::string_view PairOutcomeName(PairOutcome o) {
  switch (o) {
    case PairOutcome::kMinimaxBetter:
      return "minimax-better";
    case PairOutcome::kProductBetter:
      return "product-better";
    case PairOutcome::kNotCritical:
      return "not-critical";
  }
  return "?";
}

GameRecord PlayGameLogged(const Board& board, Variant variant,
                          BackupRule first_rule, BackupRule second_rule,
                          int depth, ProbabilityScale scale) {
  if (depth < 1) throw std::invalid_argument("PlayGame: depth must be >= 1");
  if (IsTerminal(board, variant)) {
    throw std::invalid_argument("PlayGame: initial board is terminal");
  }
  const Player first = board.to_move();
  const TipEvaluator first_eval = DefaultEvaluator(first_rule, scale);
  const TipEvaluator second_eval = DefaultEvaluator(second_rule, scale);
  GameRecord rec;
  absl::flat_hash_set<std::string> seen;
  Board b = board;
  while (!IsTerminal(b, variant)) {
    if (!seen.insert(b.ToString()).second) {
      rec.repetition = true;
      rec.final_board = b;
      rec.result = GameValue{Outcome::kTie, first};
      return rec;
    }
    const bool mine = b.to_move() == first;
    const Move m = ChooseMove(b, variant, mine ? first_rule : second_rule,
                              depth, mine ? first_eval : second_eval)
                       .chosen;
    rec.moves.push_back(m);
    b = ApplyMove(b, m, variant);
  }
  rec.final_board = Settle(b);
  rec.result = TerminalValue(rec.final_board, first);
  return rec;
}

GameValue PlayGame(const Board& board, Variant variant, BackupRule first_rule,
                   BackupRule second_rule, int depth, ProbabilityScale scale) {
  return PlayGameLogged(board, variant, first_rule, second_rule, depth, scale)
      .result;
}

PairOutcome ClassifyPair(const GameValue& minimax_first,
                         const GameValue& product_first) {
  // Both values are for the first mover of their game.
  const Outcome a = minimax_first.outcome;
  const Outcome b = product_first.outcome;
  if (a == Outcome::kWin && b == Outcome::kLoss) {
    return PairOutcome::kMinimaxBetter;
  }
  if (a == Outcome::kLoss && b == Outcome::kWin) {
    return PairOutcome::kProductBetter;
  }
  return PairOutcome::kNotCritical;
}

PairOutcome PlayPair(const Board& board, Variant variant, int depth,
                     ProbabilityScale scale) {
  const GameValue a = PlayGame(board, variant, BackupRule::kMinimax,
                               BackupRule::kProduct, depth, scale);
  const GameValue b = PlayGame(board, variant, BackupRule::kProduct,
                               BackupRule::kMinimax, depth, scale);
  return ClassifyPair(a, b);
}

ContestRow MakeContestRow(Variant variant, int depth,
                          std::int64_t pairs_examined,
                          std::int64_t minimax_better,
                          std::int64_t boards_consumed, double alpha,
                          TailMethod method) {
  ContestRow row;
  row.variant = variant;
  row.depth = depth;
  row.pairs_examined = pairs_examined;
  row.minimax_better = minimax_better;
  row.boards_consumed = boards_consumed;
  if (pairs_examined == 0) {
    row.degenerate = true;
    return row;
  }
  row.pct = static_cast<double>(minimax_better) / pairs_examined;
  row.p_value = OneTailedP(minimax_better, pairs_examined, method);
  row.conclusion = Conclude(minimax_better, pairs_examined, alpha, method);
  return row;
}

ContestRow RunContest(std::span<const Board> boards, Variant variant,
                      int depth, const ContestOptions& options) {
  if (boards.empty()) throw std::invalid_argument("RunContest: no boards");
  std::int64_t pairs = 0;
  std::int64_t minimax_better = 0;
  std::int64_t consumed = 0;
  for (const Board& board : boards) {
    ++consumed;
    const PairOutcome o = PlayPair(board, variant, depth, options.scale);
    if (o == PairOutcome::kNotCritical) continue;
    ++pairs;
    minimax_better += o == PairOutcome::kMinimaxBetter;
    if (pairs >= options.min_critical &&
        OneTailedP(minimax_better, pairs, options.method) < options.alpha) {
      break;
    }
  }
  return MakeContestRow(variant, depth, pairs, minimax_better, consumed,
                        options.alpha, options.method);
}

}  // namespace kalahlab
