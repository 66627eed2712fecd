#include <doctest.h>

#include <filesystem>
#include <stdexcept>

#include "kalahlab/solver.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace kalahlab;

TEST_CASE("solved terminal positions compare stores") {
  SolveCache cache;
  const Board b = B("south=0,0,0 north=0,0,0 stores=7,11 turn=S");
  CHECK(Solve(b, Variant::kStandard, cache).outcome == Outcome::kLoss);
  CHECK(Solve(b, Variant::kStandard, cache).perspective == Player::kSouth);
}

TEST_CASE("hand-enumerated fixtures") {
  // S2 -> south store, go-again with an empty side, north sweeps its one
  // stone: 1-1 in every variant.
  const Board tie = B("south=0,0,1 north=0,0,1 stores=0,0 turn=S");
  for (Variant v : kAllVariants) {
    SolveCache cache;
    CHECK(Solve(tie, v, cache).outcome == Outcome::kTie);
    CHECK(Solve(tie, v).outcome == Outcome::kTie);
  }
  // Either south move ends 2-1: north's last stone goes home with a
  // go-again onto an empty side and south sweeps its remaining stones.
  const Board win = B("south=1,0,1 north=0,0,1 stores=0,0 turn=S");
  SolveCache cache;
  CHECK(Solve(win, Variant::kStandard, cache).outcome == Outcome::kWin);
  CHECK(SolveFinalMargin(win, Variant::kStandard, &cache) == 1);
}

TEST_CASE("win_for and loss_for are strict") {
  const GameValue w{Outcome::kWin, Player::kSouth};
  CHECK(WinFor(w, Player::kSouth));
  CHECK(LossFor(w, Player::kNorth));
  CHECK_FALSE(WinFor(w, Player::kNorth));
  const GameValue t{Outcome::kTie, Player::kSouth};
  for (Player p : {Player::kSouth, Player::kNorth}) {
    CHECK_FALSE(WinFor(t, p));
    CHECK_FALSE(LossFor(t, p));
  }
}

TEST_CASE("perfect evaluation maps outcomes to probabilities") {
  SolveCache cache;
  const Board win = B("south=1,0,1 north=0,0,1 stores=0,0 turn=S");
  CHECK(PerfectEval(win, Variant::kStandard, cache, Player::kSouth) == 1.0);
  CHECK(PerfectEval(win, Variant::kStandard, cache, Player::kNorth) == 0.0);
  const Board tie = B("south=0,0,0 north=0,0,0 stores=4,4 turn=N");
  CHECK(PerfectEval(tie, Variant::kNoPremature, cache, Player::kNorth) == 0.5);

  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const Board b = GenRandomBoard(3, 4, rng);
    const GameValue v = Solve(b, Variant::kStandard, cache);
    const double e = PerfectEval(b, Variant::kStandard, cache, Player::kSouth);
    CHECK(e == (WinFor(v, Player::kSouth)    ? 1.0
                : LossFor(v, Player::kSouth) ? 0.0
                                             : 0.5));
  }
}

TEST_CASE("solve matches brute force on every board with at most 4 stones") {
  for (Variant v : kAllVariants) {
    SolveCache cache;
    for (int stones = 0; stones <= 4; ++stones) {
      for (const Board& b : oracle::AllBoards(stones)) {
        REQUIRE(Solve(b, v, cache) == oracle::BruteForceSolve(b, v));
      }
    }
  }
}

TEST_CASE("cold, warm and absent caches agree; mirror flips the value") {
  Rng rng(23);
  for (Variant v : kAllVariants) {
    SolveCache warm;
    for (int i = 0; i < 40; ++i) {
      const Board b = *RandomPrefix(GenRandomBoard(3, 2, rng), 0, v, rng);
      SolveCache cold;
      const GameValue a = Solve(b, v, cold);
      CHECK(Solve(b, v, warm) == a);
      CHECK(Solve(b, v, warm) == a);
      CHECK(Solve(b, v) == a);
      CHECK(Solve(b.Mirrored(), v, warm).SeenBy(Player::kNorth).outcome ==
            a.outcome);
    }
    CHECK(warm.hits() > 0);
  }
}

TEST_CASE("all-winning and all-losing children decide the parent") {
  Rng rng(5);
  int closed = 0;
  for (int i = 0; i < 300; ++i) {
    const Variant v = kAllVariants[i % 3];
    SolveCache cache;
    auto b = RandomPrefix(GenRandomBoard(3, 6, rng), 3, v, rng);
    if (!b || IsTerminal(*b, v)) continue;
    const Player mover = b->to_move();
    bool all_win = true, all_loss = true;
    for (Move m : LegalMoves(*b, v)) {
      const GameValue c = Solve(ApplyMove(*b, m, v), v, cache);
      all_win &= WinFor(c, mover);
      all_loss &= LossFor(c, mover);
    }
    const GameValue parent = Solve(*b, v, cache);
    if (all_win) CHECK(WinFor(parent, mover));
    if (all_loss) CHECK(LossFor(parent, mover));
    closed += all_win || all_loss;
  }
  CHECK(closed > 0);
}

TEST_CASE("solve key distinguishes variant and player to move") {
  const Board b = B("south=1,2,3 north=4,5,6 stores=0,0 turn=S");
  Board n = b;
  n.set_to_move(Player::kNorth);
  CHECK(SolveKey(b, Variant::kStandard) != SolveKey(n, Variant::kStandard));
  CHECK(SolveKey(b, Variant::kStandard) != SolveKey(b, Variant::kNoGoAgain));
  CHECK(SolveKey(b, Variant::kNoPremature) !=
        SolveKey(b, Variant::kNoGoAgain));
  const std::vector<int> five{1, 1, 1, 1, 1};
  CHECK_THROWS_AS(
      SolveKey(Board(five, five, 0, 0, Player::kSouth), Variant::kStandard),
      std::invalid_argument);
}

TEST_CASE("path context rejects a position already on the line") {
  PathContext path;
  const Board b = B("south=1,2,3 north=4,5,6 stores=0,0 turn=S");
  CHECK(path.Push(b, Variant::kStandard));
  CHECK_FALSE(path.Push(b, Variant::kStandard));
  Board other = b;
  other.set_store(Player::kSouth, 1);
  CHECK(path.Push(other, Variant::kStandard));
  path.Pop(other, Variant::kStandard);
  path.Pop(b, Variant::kStandard);
  CHECK(path.empty());
}

TEST_CASE("cache persistence round-trips") {
  SolveCache cache;
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    Solve(GenRandomBoard(3, 3, rng), Variant::kStandard, cache);
  }
  const auto path =
      std::filesystem::temp_directory_path() / "kalahlab_cache_test.txt";
  cache.Save(path);
  SolveCache loaded = SolveCache::Load(path);
  CHECK(loaded.size() == cache.size());
  Rng again(8);
  for (int i = 0; i < 20; ++i) {
    const Board b = GenRandomBoard(3, 3, again);
    const auto hits = loaded.hits();
    CHECK(Solve(b, Variant::kStandard, loaded) ==
          Solve(b, Variant::kStandard, cache));
    CHECK(loaded.hits() > hits);
  }
  std::filesystem::remove(path);
}
