#include "kalahlab/solver.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kalahlab {

std::uint64_t SolveKey(const Board& board, Variant variant) {
  const int holes = board.holes();
  if (holes > 4) {
    throw std::invalid_argument("SolveKey: solver supports at most 4 holes");
  }
  std::uint64_t key = 0;
  for (Player side : {Player::kSouth, Player::kNorth}) {
    for (int i = 0; i < holes; ++i) {
      const int stones = board.pit(side, i);
      if (stones > 127) {
        throw std::invalid_argument("SolveKey: pit holds more than 127");
      }
      key = (key << 7) | static_cast<std::uint64_t>(stones);
    }
  }
  key |= static_cast<std::uint64_t>(board.to_move()) << 56;
  key |= static_cast<std::uint64_t>(holes) << 57;
  key |= static_cast<std::uint64_t>(variant) << 60;
  return key;
}

std::optional<int> SolveCache::Find(std::uint64_t key) const {
  auto it = margins_.find(key);
  if (it == margins_.end()) {
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return it->second;
}

void SolveCache::Insert(std::uint64_t key, int future_margin) {
  margins_.emplace(key, static_cast<std::int16_t>(future_margin));
}

void SolveCache::Clear() {
  margins_.clear();
  hits_ = misses_ = 0;
}

void SolveCache::Save(const std::filesystem::path& path) const {
  std::vector<std::pair<std::uint64_t, int>> entries(margins_.begin(),
                                                     margins_.end());
  std::sort(entries.begin(), entries.end());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << kFileMagic << " v" << kFileVersion << '\n';
  char buf[40];
  for (const auto& [key, margin] : entries) {
    std::snprintf(buf, sizeof buf, "%016llx %d\n",
                  static_cast<unsigned long long>(key), margin);
    out << buf;
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

SolveCache SolveCache::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string header;
  std::getline(in, header);
  const std::string expected =
      std::string(kFileMagic) + " v" + std::to_string(kFileVersion);
  if (header != expected) {
    throw std::runtime_error(path.string() + ": expected header '" +
                             expected + "'");
  }
  SolveCache cache;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::uint64_t key = 0;
    int margin = 0;
    if (!(fields >> std::hex >> key >> std::dec >> margin)) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": malformed cache entry");
    }
    cache.Insert(key, margin);
  }
  return cache;
}

PathContext::Key PathContext::KeyOf(const Board& board, Variant variant) {
  return {SolveKey(board, variant),
          (static_cast<std::uint64_t>(board.store(Player::kSouth)) << 32) |
              static_cast<std::uint64_t>(board.store(Player::kNorth))};
}

bool PathContext::Push(const Board& board, Variant variant) {
  return keys_.insert(KeyOf(board, variant)).second;
}

void PathContext::Pop(const Board& board, Variant variant) {
  keys_.erase(KeyOf(board, variant));
}

namespace {

int StoreDiff(const Board& b) {
  return b.store(Player::kSouth) - b.store(Player::kNorth);
}

struct Labeled {
  int future_margin;
  // Set when a repetition inside the subtree was scored; such values depend
  // on the path and are not cached.
  bool path_dependent;
};

Labeled Label(const Board& board, Variant variant, SolveCache* cache,
              PathContext& path) {
  if (IsTerminal(board, variant)) {
    return {board.side_stones(Player::kSouth) -
                board.side_stones(Player::kNorth),
            false};
  }
  const std::uint64_t key = SolveKey(board, variant);
  if (cache) {
    if (auto hit = cache->Find(key)) return {*hit, false};
  }
  if (!path.Push(board, variant)) {
    // Draw by repetition: the game ends level from here.
    return {-StoreDiff(board), true};
  }
  const bool south_moves = board.to_move() == Player::kSouth;
  const int base = StoreDiff(board);
  int best = 0;
  bool first = true;
  bool path_dependent = false;
  for (Move m : LegalMoves(board, variant)) {
    const Board child = ApplyMove(board, m, variant);
    const Labeled sub = Label(child, variant, cache, path);
    const int value = StoreDiff(child) - base + sub.future_margin;
    path_dependent |= sub.path_dependent;
    if (first || (south_moves ? value > best : value < best)) best = value;
    first = false;
  }
  path.Pop(board, variant);
  if (cache && !path_dependent) cache->Insert(key, best);
  return {best, path_dependent};
}

}  // namespace

int SolveFinalMargin(const Board& board, Variant variant, SolveCache* cache) {
  PathContext path;
  return StoreDiff(board) + Label(board, variant, cache, path).future_margin;
}

GameValue Solve(const Board& board, Variant variant, SolveCache* cache) {
  const int margin = SolveFinalMargin(board, variant, cache);
  const Outcome o = margin > 0   ? Outcome::kWin
                    : margin < 0 ? Outcome::kLoss
                                 : Outcome::kTie;
  return GameValue{o, Player::kSouth};
}

bool WinFor(const GameValue& value, Player perspective) {
  return value.SeenBy(perspective).outcome == Outcome::kWin;
}

bool LossFor(const GameValue& value, Player perspective) {
  return value.SeenBy(perspective).outcome == Outcome::kLoss;
}

double PerfectEval(const Board& board, Variant variant, SolveCache& cache,
                   Player perspective) {
  switch (Solve(board, variant, cache).SeenBy(perspective).outcome) {
    case Outcome::kWin:
      return 1.0;
    case Outcome::kTie:
      return 0.5;
    case Outcome::kLoss:
      return 0.0;
  }
  return 0.5;
}

}  // namespace kalahlab
