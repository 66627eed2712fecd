#include "kalahlab/rhf.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "kalahlab/search.hpp"

namespace kalahlab {

SiblingEvaluator AdvantageSiblingEvaluator() {
  return [](const Board& child, Player parent_mover) {
    return static_cast<double>(KalahAdvantage(child, parent_mover));
  };
}

namespace {

struct Child {
  double eval;
  Outcome outcome;  // for the parent's mover
};

int Children(const Board& parent, Variant variant, SolveCache& cache,
             const SiblingEvaluator& evaluator,
             std::array<Child, kMaxHoles>& out) {
  const Player mover = parent.to_move();
  int n = 0;
  for (Move m : LegalMoves(parent, variant)) {
    const Board child = ApplyMove(parent, m, variant);
    out[n++] = Child{evaluator(child, mover),
                     Solve(child, variant, cache).SeenBy(mover).outcome};
  }
  return n;
}

// Advances board `index`; nullopt when the sample must be discarded.
std::optional<Board> SamplePosition(const Board& board, std::size_t index,
                                    Variant variant, int prefix_len,
                                    std::uint64_t seed,
                                    std::string_view purpose) {
  Rng rng(Rng::Derive(seed, purpose, index));
  auto c = RandomPrefix(board, prefix_len, variant, rng);
  if (!c || IsTerminal(*c, variant)) return std::nullopt;
  return c;
}

}  // namespace

FlawTally TallySiblingFlaws(const Board& parent, Variant variant,
                            SolveCache& cache,
                            const SiblingEvaluator& evaluator) {
  FlawTally tally;
  if (IsTerminal(parent, variant)) return tally;
  std::array<Child, kMaxHoles> kids{};
  const int n = Children(parent, variant, cache, evaluator, kids);
  for (int i = 0; i < n; ++i) {
    if (kids[i].outcome != Outcome::kLoss) continue;
    for (int j = 0; j < n; ++j) {
      if (i == j || kids[i].eval < kids[j].eval) continue;
      ++tally.f_count;
      if (kids[j].outcome == Outcome::kWin) ++tally.fwin_count;
    }
  }
  return tally;
}

RhfEstimate EstimateRhf(std::span<const Board> boards, Variant variant,
                        int prefix_len, std::uint64_t seed, SolveCache& cache,
                        const SiblingEvaluator& evaluator) {
  if (boards.empty()) throw std::invalid_argument("EstimateRhf: no boards");
  if (prefix_len < 0) throw std::invalid_argument("EstimateRhf: prefix < 0");
  const SiblingEvaluator eval =
      evaluator ? evaluator : AdvantageSiblingEvaluator();
  RhfEstimate est;
  FlawTally total;
  for (std::size_t i = 0; i < boards.size(); ++i) {
    auto c = SamplePosition(boards[i], i, variant, prefix_len, seed, "prefix");
    if (!c) {
      ++est.boards_discarded;
      continue;
    }
    ++est.boards_used;
    total += TallySiblingFlaws(*c, variant, cache, eval);
  }
  est.f_count = total.f_count;
  est.fwin_count = total.fwin_count;
  return est;
}

namespace {

struct DecompositionCounts {
  std::uint64_t samples = 0;
  std::uint64_t win_c = 0;
  std::uint64_t win_m = 0;
  std::uint64_t loss_m = 0;
  std::uint64_t loss_m_win_n = 0;

  void Add(Outcome c, Outcome m, Outcome n) {
    ++samples;
    win_c += c == Outcome::kWin;
    win_m += m == Outcome::kWin;
    if (m == Outcome::kLoss) {
      ++loss_m;
      loss_m_win_n += n == Outcome::kWin;
    }
  }

  DecompositionSide Finish() const {
    DecompositionSide side;
    side.samples = samples;
    if (samples == 0) return side;
    const double total = static_cast<double>(samples);
    side.lhs = win_c / total;
    const double rhf =
        loss_m == 0 ? 0.0 : static_cast<double>(loss_m_win_n) / loss_m;
    side.rhs = win_m / total + (loss_m / total) * rhf;
    side.lhs_std_error = std::sqrt(side.lhs * (1.0 - side.lhs) / total);
    return side;
  }
};

}  // namespace

DecompositionReport VerifyDecomposition(std::span<const Board> boards,
                                        Variant variant, int prefix_len,
                                        std::uint64_t seed,
                                        SolveCache& cache) {
  const SiblingEvaluator eval = AdvantageSiblingEvaluator();
  DecompositionCounts all, tie_free;
  DecompositionReport report;
  for (std::size_t i = 0; i < boards.size(); ++i) {
    auto c = SamplePosition(boards[i], i, variant, prefix_len, seed,
                            "decomposition");
    if (!c) continue;
    std::array<Child, kMaxHoles> kids{};
    if (Children(*c, variant, cache, eval, kids) != 2) continue;
    ++report.positions;
    const Outcome parent =
        Solve(*c, variant, cache).SeenBy(c->to_move()).outcome;
    for (auto [mi, ni] : {std::pair{0, 1}, std::pair{1, 0}}) {
      const Child& m = kids[mi];
      const Child& n = kids[ni];
      if (m.eval < n.eval) continue;
      all.Add(parent, m.outcome, n.outcome);
      if (parent != Outcome::kTie && m.outcome != Outcome::kTie &&
          n.outcome != Outcome::kTie) {
        tie_free.Add(parent, m.outcome, n.outcome);
      }
    }
  }
  report.all = all.Finish();
  report.tie_free = tie_free.Finish();
  if (all.samples > 0) {
    report.tie_fraction =
        1.0 - static_cast<double>(tie_free.samples) / all.samples;
  }
  return report;
}

}  // namespace kalahlab
