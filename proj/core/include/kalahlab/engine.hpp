#pragma once

// Kalah rules for the standard game and two rule-modified variants.
//
// Board layout: each side indexes its own pits 0..H-1 in sowing order.
// Sowing from pit i of the mover visits the mover's pits i+1..H-1, the
// mover's store, the opponent's pits 0..H-1 and then wraps, skipping the
// opponent's store. Pit i faces pit H-1-i on the other side.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "kalahlab/rng.hpp"

namespace kalahlab {

inline constexpr int kMaxHoles = 8;

enum class Player : std::uint8_t { kSouth = 0, kNorth = 1 };

constexpr Player Opponent(Player p) {
  return p == Player::kSouth ? Player::kNorth : Player::kSouth;
}

char PlayerChar(Player p);

enum class Variant : std::uint8_t {
  kStandard = 0,
  // A player without a move skips instead of ending the game.
  kNoPremature = 1,
  // Landing in the own store never grants an extra move.
  kNoGoAgain = 2,
};

std::string_view VariantName(Variant v);
// Accepts "standard", "no-premature", "no-go-again" (underscores also ok).
Variant ParseVariant(std::string_view name);

inline constexpr std::array<Variant, 3> kAllVariants = {
    Variant::kStandard, Variant::kNoPremature, Variant::kNoGoAgain};

struct Move {
  static constexpr int kSkipPit = kMaxHoles;

  int pit = 0;

  static constexpr Move Skip() { return Move{kSkipPit}; }
  constexpr bool is_skip() const { return pit == kSkipPit; }

  // Ascending pit order with SKIP last.
  friend constexpr auto operator<=>(const Move&, const Move&) = default;
};

std::string MoveToString(Move m);

// Fixed-capacity move container; legal move generation never allocates.
class MoveList {
 public:
  void push_back(Move m) { moves_[size_++] = m; }
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  Move operator[](int i) const { return moves_[i]; }
  const Move* begin() const { return moves_.data(); }
  const Move* end() const { return moves_.data() + size_; }

 private:
  std::array<Move, kMaxHoles> moves_{};
  int size_ = 0;
};

class Board {
 public:
  // An empty H=3 board, south to move.
  Board() = default;
  Board(std::span<const int> south, std::span<const int> north,
        int store_south, int store_north, Player to_move);

  int holes() const { return holes_; }
  int pit(Player side, int index) const {
    return pits_[Offset(side) + index];
  }
  int store(Player side) const { return stores_[Index(side)]; }
  Player to_move() const { return to_move_; }

  void set_pit(Player side, int index, int stones) {
    pits_[Offset(side) + index] = stones;
  }
  void set_store(Player side, int stones) { stores_[Index(side)] = stones; }
  void set_to_move(Player p) { to_move_ = p; }

  int side_stones(Player side) const;
  bool side_empty(Player side) const { return side_stones(side) == 0; }
  int total_stones() const;

  // Swaps the two sides (pits, stores and turn).
  Board Mirrored() const;

  // `south=a,b,c north=d,e,f stores=s,n turn=S|N`
  std::string ToString() const;
  // Throws std::invalid_argument with a diagnostic on malformed input or
  // negative counts.
  static Board Parse(std::string_view line);

  friend bool operator==(const Board&, const Board&) = default;

 private:
  static constexpr int Index(Player p) { return static_cast<int>(p); }
  int Offset(Player side) const { return Index(side) * kMaxHoles; }

  int holes_ = 3;
  std::array<int, 2 * kMaxHoles> pits_{};
  std::array<int, 2> stores_{};
  Player to_move_ = Player::kSouth;
};

enum class Outcome : std::uint8_t { kLoss = 0, kTie = 1, kWin = 2 };

std::string_view OutcomeName(Outcome o);

constexpr Outcome Flip(Outcome o) {
  switch (o) {
    case Outcome::kWin:
      return Outcome::kLoss;
    case Outcome::kLoss:
      return Outcome::kWin;
    default:
      return Outcome::kTie;
  }
}

struct GameValue {
  Outcome outcome = Outcome::kTie;
  Player perspective = Player::kSouth;

  // The same game result expressed for `p`.
  GameValue SeenBy(Player p) const {
    return p == perspective ? *this : GameValue{Flip(outcome), p};
  }

  friend bool operator==(const GameValue&, const GameValue&) = default;
};

// Every nonempty pit index of the player to move, ascending. Under
// kNoPremature a player with empty pits gets the single SKIP move.
// Throws std::logic_error on a terminal board.
MoveList LegalMoves(const Board& board, Variant variant);

// Throws std::invalid_argument on an illegal move.
Board ApplyMove(const Board& board, Move move, Variant variant);

bool IsTerminal(const Board& board, Variant variant);

// Moves any pit stones left on a terminal board into their owner's store.
// A no-op on boards produced by ApplyMove, which sweeps as the game ends.
Board Settle(const Board& board);

// Result by store comparison. Requires every pit to be empty (i.e. a settled
// terminal board); throws std::logic_error otherwise.
GameValue TerminalValue(const Board& board, Player perspective);

// Each pit uniform in [1, max_per_pit], empty stores, south to move.
Board GenRandomBoard(int holes, int max_per_pit, Rng& rng);

// Plays k uniformly random legal moves. Returns nullopt if the game ends
// before all k moves are made.
std::optional<Board> RandomPrefix(const Board& board, int k, Variant variant,
                                  Rng& rng);

}  // namespace kalahlab
