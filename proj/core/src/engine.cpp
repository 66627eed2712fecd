#include "kalahlab/engine.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace kalahlab {

char PlayerChar(Player p) { return p == Player::kSouth ? 'S' : 'N'; }

std::string_view VariantName(Variant v) {
  switch (v) {
    case Variant::kStandard:
      return "standard";
    case Variant::kNoPremature:
      return "no-premature";
    case Variant::kNoGoAgain:
      return "no-go-again";
  }
  return "unknown";
}

Variant ParseVariant(std::string_view name) {
  std::string s(name);
  for (char& c : s) {
    if (c == '_') c = '-';
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  for (Variant v : kAllVariants) {
    if (s == VariantName(v)) return v;
  }
  throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

std::string MoveToString(Move m) {
  return m.is_skip() ? std::string("skip") : std::to_string(m.pit);
}

std::string_view OutcomeName(Outcome o) {
  switch (o) {
    case Outcome::kWin:
      return "WIN";
    case Outcome::kLoss:
      return "LOSS";
    case Outcome::kTie:
      return "TIE";
  }
  return "?";
}

Board::Board(std::span<const int> south, std::span<const int> north,
             int store_south, int store_north, Player to_move)
    : holes_(static_cast<int>(south.size())), to_move_(to_move) {
  if (south.size() != north.size()) {
    throw std::invalid_argument("Board: sides have different pit counts");
  }
  if (holes_ < 1 || holes_ > kMaxHoles) {
    throw std::invalid_argument("Board: holes must be in [1, " +
                                std::to_string(kMaxHoles) + "]");
  }
  if (store_south < 0 || store_north < 0) {
    throw std::invalid_argument("Board: negative store");
  }
  for (int i = 0; i < holes_; ++i) {
    if (south[i] < 0 || north[i] < 0) {
      throw std::invalid_argument("Board: negative pit count");
    }
    set_pit(Player::kSouth, i, south[i]);
    set_pit(Player::kNorth, i, north[i]);
  }
  stores_ = {store_south, store_north};
}

int Board::side_stones(Player side) const {
  int sum = 0;
  for (int i = 0; i < holes_; ++i) sum += pit(side, i);
  return sum;
}

int Board::total_stones() const {
  return side_stones(Player::kSouth) + side_stones(Player::kNorth) +
         stores_[0] + stores_[1];
}

Board Board::Mirrored() const {
  Board m = *this;
  for (int i = 0; i < holes_; ++i) {
    m.set_pit(Player::kSouth, i, pit(Player::kNorth, i));
    m.set_pit(Player::kNorth, i, pit(Player::kSouth, i));
  }
  m.stores_ = {stores_[1], stores_[0]};
  m.to_move_ = Opponent(to_move_);
  return m;
}

std::string Board::ToString() const {
  std::ostringstream out;
  auto side = [&](Player p) {
    for (int i = 0; i < holes_; ++i) {
      if (i) out << ',';
      out << pit(p, i);
    }
  };
  out << "south=";
  side(Player::kSouth);
  out << " north=";
  side(Player::kNorth);
  out << " stores=" << stores_[0] << ',' << stores_[1]
      << " turn=" << PlayerChar(to_move_);
  return out.str();
}

namespace {

std::vector<int> ParseCounts(std::string_view field, std::string_view what) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= field.size()) {
    std::size_t comma = field.find(',', pos);
    if (comma == std::string_view::npos) comma = field.size();
    std::string_view tok = field.substr(pos, comma - pos);
    int value = 0;
    auto [ptr, ec] =
        std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw std::invalid_argument("bad " + std::string(what) + " count '" +
                                  std::string(tok) + "'");
    }
    if (value < 0) {
      throw std::invalid_argument("negative " + std::string(what) +
                                  " count " + std::to_string(value));
    }
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

}  // namespace

Board Board::Parse(std::string_view line) {
  std::optional<std::vector<int>> south, north, stores;
  std::optional<Player> turn;
  std::istringstream in{std::string(line)};
  std::string field;
  while (in >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("expected key=value, got '" + field + "'");
    }
    const std::string key = field.substr(0, eq);
    const std::string_view value = std::string_view(field).substr(eq + 1);
    if (key == "south") {
      south = ParseCounts(value, "pit");
    } else if (key == "north") {
      north = ParseCounts(value, "pit");
    } else if (key == "stores") {
      stores = ParseCounts(value, "store");
    } else if (key == "turn") {
      if (value == "S") {
        turn = Player::kSouth;
      } else if (value == "N") {
        turn = Player::kNorth;
      } else {
        throw std::invalid_argument("turn must be S or N");
      }
    } else {
      throw std::invalid_argument("unknown field '" + key + "'");
    }
  }
  if (!south || !north || !stores || !turn) {
    throw std::invalid_argument(
        "board line needs south=, north=, stores= and turn=");
  }
  if (stores->size() != 2) {
    throw std::invalid_argument("stores= needs exactly two counts");
  }
  return Board(*south, *north, (*stores)[0], (*stores)[1], *turn);
}

MoveList LegalMoves(const Board& board, Variant variant) {
  if (IsTerminal(board, variant)) {
    throw std::logic_error("LegalMoves: terminal position " +
                           board.ToString());
  }
  MoveList moves;
  const Player p = board.to_move();
  for (int i = 0; i < board.holes(); ++i) {
    if (board.pit(p, i) > 0) moves.push_back(Move{i});
  }
  if (moves.empty()) moves.push_back(Move::Skip());
  return moves;
}

namespace {

void Sweep(Board& b, Player side) {
  b.set_store(side, b.store(side) + b.side_stones(side));
  for (int i = 0; i < b.holes(); ++i) b.set_pit(side, i, 0);
}

}  // namespace

Board ApplyMove(const Board& board, Move move, Variant variant) {
  if (IsTerminal(board, variant)) {
    throw std::invalid_argument("ApplyMove: position is terminal");
  }
  const Player mover = board.to_move();
  const Player other = Opponent(mover);
  const int holes = board.holes();
  Board next = board;

  if (move.is_skip()) {
    if (variant != Variant::kNoPremature || !board.side_empty(mover)) {
      throw std::invalid_argument("ApplyMove: skip is not legal here");
    }
    next.set_to_move(other);
    return next;
  }
  if (move.pit < 0 || move.pit >= holes || board.pit(mover, move.pit) == 0) {
    throw std::invalid_argument("ApplyMove: illegal move " +
                                MoveToString(move) + " on " +
                                board.ToString());
  }

  // Stations in mover-relative order: [0, H) own pits, H own store,
  // (H, 2H] opponent pits.
  const int cycle = 2 * holes + 1;
  int stones = board.pit(mover, move.pit);
  next.set_pit(mover, move.pit, 0);
  int station = move.pit;
  while (stones-- > 0) {
    station = (station + 1) % cycle;
    if (station < holes) {
      next.set_pit(mover, station, next.pit(mover, station) + 1);
    } else if (station == holes) {
      next.set_store(mover, next.store(mover) + 1);
    } else {
      const int i = station - holes - 1;
      next.set_pit(other, i, next.pit(other, i) + 1);
    }
  }

  if (station < holes && next.pit(mover, station) == 1) {
    const int opposite = holes - 1 - station;
    const int captured = next.pit(other, opposite);
    if (captured > 0) {
      next.set_store(mover, next.store(mover) + captured + 1);
      next.set_pit(other, opposite, 0);
      next.set_pit(mover, station, 0);
    }
  }

  const bool go_again = station == holes && variant != Variant::kNoGoAgain;
  next.set_to_move(go_again ? mover : other);

  if (variant != Variant::kNoPremature && next.side_empty(next.to_move())) {
    Sweep(next, Opponent(next.to_move()));
  }
  return next;
}

bool IsTerminal(const Board& board, Variant variant) {
  if (variant == Variant::kNoPremature) {
    return board.side_empty(Player::kSouth) &&
           board.side_empty(Player::kNorth);
  }
  return board.side_empty(board.to_move());
}

Board Settle(const Board& board) {
  Board b = board;
  Sweep(b, Player::kSouth);
  Sweep(b, Player::kNorth);
  return b;
}

GameValue TerminalValue(const Board& board, Player perspective) {
  if (!board.side_empty(Player::kSouth) || !board.side_empty(Player::kNorth)) {
    throw std::logic_error("TerminalValue: board has stones in play: " +
                           board.ToString());
  }
  const int mine = board.store(perspective);
  const int theirs = board.store(Opponent(perspective));
  const Outcome o = mine > theirs   ? Outcome::kWin
                    : mine < theirs ? Outcome::kLoss
                                    : Outcome::kTie;
  return GameValue{o, perspective};
}

Board GenRandomBoard(int holes, int max_per_pit, Rng& rng) {
  if (holes < 1 || holes > kMaxHoles) {
    throw std::invalid_argument("GenRandomBoard: bad hole count");
  }
  if (max_per_pit < 1) {
    throw std::invalid_argument("GenRandomBoard: max_per_pit must be >= 1");
  }
  std::vector<int> south(holes), north(holes);
  for (int& s : south) s = rng.UniformInt(1, max_per_pit);
  for (int& s : north) s = rng.UniformInt(1, max_per_pit);
  return Board(south, north, 0, 0, Player::kSouth);
}

std::optional<Board> RandomPrefix(const Board& board, int k, Variant variant,
                                  Rng& rng) {
  Board b = board;
  for (int step = 0; step < k; ++step) {
    if (IsTerminal(b, variant)) return std::nullopt;
    const MoveList moves = LegalMoves(b, variant);
    b = ApplyMove(b, moves[rng.UniformInt(0, moves.size() - 1)], variant);
  }
  return b;
}

}  // namespace kalahlab
