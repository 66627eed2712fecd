#pragma once

// Exhaustive game-theoretic labeling of kalah positions.
//
// The solver computes, for each position, the best achievable future
// store difference (south minus north) under optimal play. Because the rules
// never read the store counts, that quantity depends only on the pits, the
// player to move and the variant, so one cache entry serves every store
// configuration. The WIN/TIE/LOSS outcome is the sign of
// (current store difference + future difference), which is exactly the
// result of optimal three-valued play.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include "kalahlab/engine.hpp"

namespace kalahlab {

// Packs (variant, holes, to_move, pits) into 64 bits. Supports H <= 4 and at
// most 127 stones per pit; throws std::invalid_argument otherwise.
std::uint64_t SolveKey(const Board& board, Variant variant);

class SolveCache {
 public:
  static constexpr std::string_view kFileMagic = "kalahlab-solve-cache";
  static constexpr int kFileVersion = 1;

  std::optional<int> Find(std::uint64_t key) const;
  void Insert(std::uint64_t key, int future_margin);

  std::size_t size() const { return margins_.size(); }
  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return misses_; }
  void Clear();

  // Text dump: a `kalahlab-solve-cache v1` header line followed by one
  // `<key-hex> <margin>` line per entry, sorted by key.
  void Save(const std::filesystem::path& path) const;
  static SolveCache Load(const std::filesystem::path& path);

 private:
  absl::flat_hash_map<std::uint64_t, std::int16_t> margins_;
  mutable std::uint64_t hits_ = 0;
  mutable std::uint64_t misses_ = 0;
};

// Positions on the current line of play; used to value repetitions as ties.
class PathContext {
 public:
  // False if the position is already on the path.
  bool Push(const Board& board, Variant variant);
  void Pop(const Board& board, Variant variant);
  bool empty() const { return keys_.empty(); }

 private:
  using Key = std::pair<std::uint64_t, std::uint64_t>;
  static Key KeyOf(const Board& board, Variant variant);
  absl::flat_hash_set<Key> keys_;
};

// Outcome under optimal play by both sides, south perspective. A position
// repeating on the current line is valued as a tie. `cache` may be null, in
// which case the full tree is expanded without memoization.
GameValue Solve(const Board& board, Variant variant,
                SolveCache* cache = nullptr);
inline GameValue Solve(const Board& board, Variant variant,
                       SolveCache& cache) {
  return Solve(board, variant, &cache);
}

// Final store difference (south minus north) under optimal margin play.
int SolveFinalMargin(const Board& board, Variant variant,
                     SolveCache* cache = nullptr);

// Strict readings: a tie is neither a win nor a loss.
bool WinFor(const GameValue& value, Player perspective);
bool LossFor(const GameValue& value, Player perspective);

// Solved value mapped to {0, 0.5, 1} for `perspective`.
double PerfectEval(const Board& board, Variant variant, SolveCache& cache,
                   Player perspective);

}  // namespace kalahlab
