#include "kalahlab/search.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace kalahlab {

std::string_view RuleName(BackupRule rule) {
  return rule == BackupRule::kMinimax ? "minimax" : "product";
}

int KalahAdvantage(const Board& board, Player perspective) {
  return board.store(perspective) - board.store(Opponent(perspective));
}

double ToWinProb(int advantage, int total_stones) {
  return 0.5 + static_cast<double>(advantage) / (2.0 * total_stones);
}

double Backup(std::span<const double> values, NodeKind kind,
              BackupRule rule) {
  if (values.empty()) throw std::invalid_argument("Backup: no values");
  if (rule == BackupRule::kMinimax) {
    double best = values[0];
    for (double v : values.subspan(1)) {
      best = kind == NodeKind::kMax ? std::max(best, v) : std::min(best, v);
    }
    return best;
  }
  double prod = 1.0;
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("Backup: product value " +
                                  std::to_string(v) + " outside [0, 1]");
    }
    prod *= kind == NodeKind::kMax ? 1.0 - v : v;
  }
  return kind == NodeKind::kMax ? 1.0 - prod : prod;
}

std::string_view ScaleName(ProbabilityScale scale) {
  return scale == ProbabilityScale::kTotalStones ? "total" : "remaining";
}

ProbabilityScale ParseScale(std::string_view name) {
  if (name == "total") return ProbabilityScale::kTotalStones;
  if (name == "remaining") return ProbabilityScale::kRemainingStones;
  throw std::invalid_argument("unknown probability scale '" +
                              std::string(name) + "'");
}

TipEvaluator DefaultEvaluator(BackupRule rule, ProbabilityScale scale) {
  if (rule == BackupRule::kMinimax) {
    return [](const Board& b, Player root) {
      return static_cast<double>(KalahAdvantage(b, root));
    };
  }
  if (scale == ProbabilityScale::kTotalStones) {
    return [](const Board& b, Player root) {
      return ToWinProb(KalahAdvantage(b, root), b.total_stones());
    };
  }
  return [](const Board& b, Player root) {
    const int remaining = b.side_stones(Player::kSouth) +
                          b.side_stones(Player::kNorth);
    const double p = 0.5 + KalahAdvantage(b, root) /
                               (2.0 * std::max(remaining, 1));
    return std::clamp(p, 0.0, 1.0);
  };
}

namespace {

class Searcher {
 public:
  Searcher(Variant variant, BackupRule rule, const TipEvaluator& evaluator,
           Player root)
      : variant_(variant), rule_(rule), evaluator_(evaluator), root_(root) {}

  double Value(const Board& board, int plies_left) {
    if (IsTerminal(board, variant_)) return TerminalScore(board);
    if (plies_left == 0) return evaluator_(board, root_);
    ++nodes_;
    std::array<double, kMaxHoles> values{};
    int n = 0;
    for (Move m : LegalMoves(board, variant_)) {
      values[n++] = Value(ApplyMove(board, m, variant_), plies_left - 1);
    }
    const NodeKind kind =
        board.to_move() == root_ ? NodeKind::kMax : NodeKind::kMin;
    return Backup(std::span<const double>(values.data(), n), kind, rule_);
  }

  std::uint64_t nodes() const { return nodes_; }
  void CountRoot() { ++nodes_; }

 private:
  double TerminalScore(const Board& board) const {
    const Outcome o = TerminalValue(Settle(board), root_).outcome;
    if (rule_ == BackupRule::kProduct) {
      return o == Outcome::kWin ? 1.0 : o == Outcome::kLoss ? 0.0 : 0.5;
    }
    const double decisive = board.total_stones() + 1.0;
    return o == Outcome::kWin ? decisive : o == Outcome::kLoss ? -decisive : 0.0;
  }

  Variant variant_;
  BackupRule rule_;
  const TipEvaluator& evaluator_;
  Player root_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SearchResult ChooseMove(const Board& board, Variant variant, BackupRule rule,
                        int depth, const TipEvaluator& evaluator) {
  if (depth < 1) throw std::invalid_argument("ChooseMove: depth must be >= 1");
  if (IsTerminal(board, variant)) {
    throw std::logic_error("ChooseMove: terminal position " +
                           board.ToString());
  }
  const TipEvaluator fallback = evaluator ? TipEvaluator{} : DefaultEvaluator(rule);
  Searcher searcher(variant, rule, evaluator ? evaluator : fallback,
                    board.to_move());
  searcher.CountRoot();
  SearchResult result;
  result.depth = depth;
  bool first = true;
  for (Move m : LegalMoves(board, variant)) {
    const double v = searcher.Value(ApplyMove(board, m, variant), depth - 1);
    // Strict comparison keeps the lowest-index move on ties.
    if (first || v > result.value) {
      result.chosen = m;
      result.value = v;
    }
    first = false;
  }
  result.nodes_expanded = searcher.nodes();
  return result;
}

}  // namespace kalahlab
