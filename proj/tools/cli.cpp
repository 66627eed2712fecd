#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "kalahlab/rng.hpp"
#include "kalahlab/solver.hpp"

namespace kalahlab::cli {

namespace {

std::runtime_error LineError(std::size_t line, const std::string& what) {
  return std::runtime_error("line " + std::to_string(line) + ": " + what);
}

template <typename T>
T ParseNumber(std::string_view text, std::string_view field) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw std::invalid_argument("bad " + std::string(field) + " '" +
                                std::string(text) + "'");
  }
  return value;
}

std::string FormatDouble(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = s.find(sep, start);
    out.push_back(s.substr(start, at == std::string_view::npos
                                      ? std::string_view::npos
                                      : at - start));
    if (at == std::string_view::npos) return out;
    start = at + 1;
  }
}

std::string_view StripCr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

}  // namespace

DepthRange ParseDepthRange(std::string_view text) {
  DepthRange r;
  const std::size_t dots = text.find("..");
  if (dots == std::string_view::npos) {
    r.first = r.last = ParseNumber<int>(text, "depth");
  } else {
    r.first = ParseNumber<int>(text.substr(0, dots), "depth");
    r.last = ParseNumber<int>(text.substr(dots + 2), "depth");
  }
  return r;
}

std::string DepthRangeToString(const DepthRange& range) {
  return std::to_string(range.first) + ".." + std::to_string(range.last);
}

std::string_view TailMethodName(TailMethod m) {
  return m == TailMethod::kNormal ? "normal" : "exact";
}

TailMethod ParseTailMethod(std::string_view name) {
  if (name == "normal") return TailMethod::kNormal;
  if (name == "exact") return TailMethod::kExact;
  throw std::invalid_argument("unknown tail method '" + std::string(name) +
                              "'");
}

void ExperimentConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("config: " + what);
  };
  if (holes < 1 || holes > kMaxHoles) {
    fail("holes must be in [1, " + std::to_string(kMaxHoles) + "]");
  }
  if (max_stones < 1) fail("max_stones must be >= 1");
  if (boards < 1) fail("boards must be >= 1");
  if (prefix_len < 0) fail("prefix_len must be >= 0");
  if (depths.first < 1 || depths.last > 12 || depths.first > depths.last) {
    fail("depth range " + DepthRangeToString(depths) +
         " must lie within 1..12");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha must be in (0, 1)");
  if (min_critical < 1) fail("min_critical must be >= 1");
}

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  j = nlohmann::json{
      {"variant", VariantName(c.variant)},
      {"holes", c.holes},
      {"max_stones", c.max_stones},
      {"boards", c.boards},
      {"prefix_len", c.prefix_len},
      {"depths", DepthRangeToString(c.depths)},
      {"alpha", c.alpha},
      {"min_critical", c.min_critical},
      {"seed", c.seed},
      {"scale", ScaleName(c.scale)},
      {"method", TailMethodName(c.method)},
      {"board_file", c.board_file.string()},
      {"results_file", c.results_file.string()},
  };
}

void from_json(const nlohmann::json& j, ExperimentConfig& c) {
  for (const auto& [key, value] : j.items()) {
    if (key == "variant") {
      c.variant = ParseVariant(value.get<std::string>());
    } else if (key == "holes") {
      c.holes = value.get<int>();
    } else if (key == "max_stones") {
      c.max_stones = value.get<int>();
    } else if (key == "boards") {
      c.boards = value.get<int>();
    } else if (key == "prefix_len") {
      c.prefix_len = value.get<int>();
    } else if (key == "depths") {
      c.depths = ParseDepthRange(value.get<std::string>());
    } else if (key == "alpha") {
      c.alpha = value.get<double>();
    } else if (key == "min_critical") {
      c.min_critical = value.get<int>();
    } else if (key == "seed") {
      c.seed = value.get<std::uint64_t>();
    } else if (key == "scale") {
      c.scale = ParseScale(value.get<std::string>());
    } else if (key == "method") {
      c.method = ParseTailMethod(value.get<std::string>());
    } else if (key == "board_file") {
      c.board_file = value.get<std::string>();
    } else if (key == "results_file") {
      c.results_file = value.get<std::string>();
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path.string());
  ExperimentConfig c = nlohmann::json::parse(in).get<ExperimentConfig>();
  c.Validate();
  return c;
}

void SaveConfig(const ExperimentConfig& config,
                const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config " + path.string());
  out << nlohmann::json(config).dump(2) << '\n';
}

std::vector<Board> GenerateBoards(const ExperimentConfig& config) {
  Rng rng(Rng::Derive(config.seed, "boards"));
  std::vector<Board> boards;
  boards.reserve(config.boards);
  for (int i = 0; i < config.boards; ++i) {
    boards.push_back(GenRandomBoard(config.holes, config.max_stones, rng));
  }
  return boards;
}

void WriteBoardFile(std::ostream& out, const BoardFile& file) {
  out << kBoardsMagic << '\n'
      << "# seed=" << file.seed << " holes=" << file.holes
      << " max_stones=" << file.max_stones << " count=" << file.boards.size()
      << '\n';
  for (const Board& b : file.boards) out << b.ToString() << '\n';
}

BoardFile ReadBoardFile(std::istream& in) {
  BoardFile file;
  std::string raw;
  std::size_t line = 0;
  if (!std::getline(in, raw) || StripCr(raw) != kBoardsMagic) {
    throw LineError(1, "expected '" + std::string(kBoardsMagic) + "'");
  }
  ++line;
  if (!std::getline(in, raw)) throw LineError(2, "missing parameter header");
  ++line;
  std::string_view header = StripCr(raw);
  if (!header.starts_with("# ")) throw LineError(2, "missing parameter header");
  std::optional<std::size_t> count;
  try {
    for (std::string_view tok : Split(header.substr(2), ' ')) {
      const std::size_t eq = tok.find('=');
      if (eq == std::string_view::npos) {
        throw std::invalid_argument("bad field '" + std::string(tok) + "'");
      }
      const std::string_view key = tok.substr(0, eq);
      const std::string_view val = tok.substr(eq + 1);
      if (key == "seed") {
        file.seed = ParseNumber<std::uint64_t>(val, "seed");
      } else if (key == "holes") {
        file.holes = ParseNumber<int>(val, "holes");
      } else if (key == "max_stones") {
        file.max_stones = ParseNumber<int>(val, "max_stones");
      } else if (key == "count") {
        count = ParseNumber<std::size_t>(val, "count");
      } else {
        throw std::invalid_argument("unknown field '" + std::string(key) +
                                    "'");
      }
    }
  } catch (const std::invalid_argument& e) {
    throw LineError(2, e.what());
  }
  if (file.holes < 1 || file.max_stones < 1 || !count) {
    throw LineError(2, "header needs holes, max_stones and count");
  }

  const int limit = 2 * file.holes * file.max_stones;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = StripCr(raw);
    if (text.empty() || text.starts_with('#')) continue;
    Board b;
    try {
      b = Board::Parse(text);
    } catch (const std::invalid_argument& e) {
      throw LineError(line, e.what());
    }
    if (b.holes() != file.holes) {
      throw LineError(line, "board has " + std::to_string(b.holes()) +
                                " holes, header says " +
                                std::to_string(file.holes));
    }
    for (Player p : {Player::kSouth, Player::kNorth}) {
      if (b.store(p) != 0) {
        throw LineError(line, "initial board has stones in a store");
      }
      for (int h = 0; h < b.holes(); ++h) {
        if (b.pit(p, h) > file.max_stones) {
          throw LineError(line, "pit exceeds max_stones");
        }
      }
    }
    if (b.total_stones() > limit) {
      throw LineError(line, "stone total exceeds " + std::to_string(limit));
    }
    file.boards.push_back(b);
  }
  if (file.boards.size() != *count) {
    throw LineError(2, "header count " + std::to_string(*count) +
                           " but file holds " +
                           std::to_string(file.boards.size()) + " boards");
  }
  return file;
}

BoardFile ReadBoardFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read board file " + path.string());
  try {
    return ReadBoardFile(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

bool ResultRow::SameKey(const ResultRow& o) const {
  if (kind != o.kind || variant != o.variant || seed != o.seed ||
      boards != o.boards || scale != o.scale || method != o.method) {
    return false;
  }
  if (kind == Kind::kRhf) return prefix_len == o.prefix_len;
  return contest.depth == o.contest.depth && alpha == o.alpha &&
         min_critical == o.min_critical;
}

std::string FormatRow(const ResultRow& row) {
  std::vector<std::string> f(21);
  f[1] = VariantName(row.variant);
  f[3] = std::to_string(row.seed);
  f[4] = std::to_string(row.boards);
  f[8] = ScaleName(row.scale);
  f[9] = TailMethodName(row.method);
  if (row.kind == ResultRow::Kind::kRhf) {
    f[0] = "rhf";
    f[5] = std::to_string(row.prefix_len);
    f[10] = std::to_string(row.rhf.f_count);
    f[11] = std::to_string(row.rhf.fwin_count);
    if (auto q = row.rhf.rhf()) f[12] = FormatDouble(*q);
    f[13] = std::to_string(row.rhf.boards_used);
    f[14] = std::to_string(row.rhf.boards_discarded);
  } else {
    const ContestRow& c = row.contest;
    f[0] = "contest";
    f[2] = std::to_string(c.depth);
    f[6] = FormatDouble(row.alpha);
    f[7] = std::to_string(row.min_critical);
    f[15] = std::to_string(c.pairs_examined);
    f[16] = std::to_string(c.minimax_better);
    f[17] = FormatDouble(c.pct);
    f[18] = FormatDouble(c.p_value);
    f[19] = ConclusionName(c.conclusion);
    f[20] = std::to_string(c.boards_consumed);
  }
  std::string out = f[0];
  for (std::size_t i = 1; i < f.size(); ++i) out += ',' + f[i];
  return out;
}

ResultRow ParseRow(std::string_view line) {
  const std::vector<std::string_view> f = Split(line, ',');
  if (f.size() != 21) {
    throw std::invalid_argument("expected 21 fields, found " +
                                std::to_string(f.size()));
  }
  ResultRow row;
  row.variant = ParseVariant(f[1]);
  row.seed = ParseNumber<std::uint64_t>(f[3], "seed");
  row.boards = ParseNumber<std::int64_t>(f[4], "boards");
  row.scale = ParseScale(f[8]);
  row.method = ParseTailMethod(f[9]);
  if (f[0] == "rhf") {
    row.kind = ResultRow::Kind::kRhf;
    row.prefix_len = ParseNumber<int>(f[5], "prefix_len");
    row.rhf.f_count = ParseNumber<std::uint64_t>(f[10], "f_count");
    row.rhf.fwin_count = ParseNumber<std::uint64_t>(f[11], "fwin_count");
    row.rhf.boards_used = ParseNumber<std::uint64_t>(f[13], "boards_used");
    row.rhf.boards_discarded =
        ParseNumber<std::uint64_t>(f[14], "boards_discarded");
    if (row.rhf.fwin_count > row.rhf.f_count) {
      throw std::invalid_argument("fwin_count exceeds f_count");
    }
  } else if (f[0] == "contest") {
    row.kind = ResultRow::Kind::kContest;
    row.alpha = ParseNumber<double>(f[6], "alpha");
    row.min_critical = ParseNumber<int>(f[7], "min_critical");
    ContestRow& c = row.contest;
    c.variant = row.variant;
    c.depth = ParseNumber<int>(f[2], "depth");
    c.pairs_examined = ParseNumber<std::int64_t>(f[15], "pairs");
    c.minimax_better = ParseNumber<std::int64_t>(f[16], "minimax_better");
    c.pct = ParseNumber<double>(f[17], "pct");
    c.p_value = ParseNumber<double>(f[18], "p_value");
    c.conclusion = ParseConclusion(f[19]);
    c.boards_consumed = ParseNumber<std::int64_t>(f[20], "boards_consumed");
    c.degenerate = c.pairs_examined == 0;
    if (c.minimax_better > c.pairs_examined) {
      throw std::invalid_argument("minimax_better exceeds pairs");
    }
  } else {
    throw std::invalid_argument("unknown kind '" + std::string(f[0]) + "'");
  }
  return row;
}

void AppendResults(const std::filesystem::path& path,
                   const std::vector<ResultRow>& rows) {
  const bool fresh = !std::filesystem::exists(path) ||
                     std::filesystem::file_size(path) == 0;
  if (!fresh) {
    std::ifstream in(path);
    std::string a, b;
    std::getline(in, a);
    std::getline(in, b);
    if (StripCr(a) != kResultsMagic || StripCr(b) != kResultsColumns) {
      throw std::runtime_error(path.string() +
                               " is not a kalahlab results file");
    }
  }
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot write results " + path.string());
  if (fresh) out << kResultsMagic << '\n' << kResultsColumns << '\n';
  for (const ResultRow& r : rows) out << FormatRow(r) << '\n';
  if (!out.flush()) {
    throw std::runtime_error("write to " + path.string() + " failed");
  }
}

std::vector<ResultRow> ReadResults(std::istream& in) {
  std::string raw;
  if (!std::getline(in, raw) || StripCr(raw) != kResultsMagic) {
    throw LineError(1, "expected '" + std::string(kResultsMagic) + "'");
  }
  if (!std::getline(in, raw) || StripCr(raw) != kResultsColumns) {
    throw LineError(2, "unexpected column header");
  }
  std::vector<ResultRow> rows;
  std::size_t line = 2;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = StripCr(raw);
    if (text.empty()) continue;
    try {
      rows.push_back(ParseRow(text));
    } catch (const std::invalid_argument& e) {
      throw LineError(line, e.what());
    }
  }
  return rows;
}

std::vector<ResultRow> ReadResults(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read results " + path.string());
  try {
    return ReadResults(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

std::string FormatPercent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * fraction);
  return buf;
}

std::string FormatSignificance(double p) {
  return p < 0.001 ? std::string("<0.1%") : FormatPercent(p);
}

namespace {

BoardFile LoadBoardsFor(const ExperimentConfig& config, std::ostream& err) {
  BoardFile file = ReadBoardFile(config.board_file);
  if (file.boards.empty()) {
    throw std::runtime_error(config.board_file.string() + ": no boards");
  }
  if (file.seed != config.seed) {
    err << "warning: " << config.board_file.string() << " was generated with seed "
        << file.seed << ", running with seed " << config.seed << '\n';
  }
  if (file.holes != config.holes || file.max_stones != config.max_stones) {
    err << "warning: " << config.board_file.string() << " has holes="
        << file.holes << " max_stones=" << file.max_stones
        << ", config says holes=" << config.holes
        << " max_stones=" << config.max_stones << '\n';
  }
  return file;
}

void PrintRhfLine(const ResultRow& row, std::ostream& out) {
  char quotient[32] = "undefined";
  if (const auto q = row.rhf.rhf()) {
    std::snprintf(quotient, sizeof quotient, "%.3f", *q);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-14s %22llu %32llu %18s",
                std::string(VariantName(row.variant)).c_str(),
                static_cast<unsigned long long>(row.rhf.f_count),
                static_cast<unsigned long long>(row.rhf.fwin_count),
                quotient);
  out << buf << '\n';
}

void PrintRhfHeader(std::ostream& out) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-14s %22s %32s %18s", "game type",
                "times F occurs", "times F & Win(n) occurs",
                "estimation of rhf");
  out << buf << '\n';
}

void PrintContestHeader(std::ostream& out) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%5s %7s %15s %11s %13s  %s", "depth",
                "pairs", "minimax better", "percentage", "significance",
                "conclusion");
  out << buf << '\n';
}

void PrintContestRow(const ContestRow& c, std::ostream& out) {
  char buf[160];
  const std::string conclusion =
      c.degenerate ? "no critical pairs" : std::string(ConclusionName(c.conclusion));
  std::snprintf(buf, sizeof buf, "%5d %7lld %15lld %11s %13s  %s", c.depth,
                static_cast<long long>(c.pairs_examined),
                static_cast<long long>(c.minimax_better),
                c.degenerate ? "-" : FormatPercent(c.pct).c_str(),
                c.degenerate ? "-" : FormatSignificance(c.p_value).c_str(),
                conclusion.c_str());
  out << buf << '\n';
}

}  // namespace

void CmdGenBoards(const ExperimentConfig& config, std::ostream& out) {
  config.Validate();
  BoardFile file;
  file.seed = config.seed;
  file.holes = config.holes;
  file.max_stones = config.max_stones;
  file.boards = GenerateBoards(config);
  std::ofstream f(config.board_file, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot write board file " +
                             config.board_file.string());
  }
  WriteBoardFile(f, file);
  if (!f.flush()) {
    throw std::runtime_error("write to " + config.board_file.string() +
                             " failed");
  }
  out << "wrote " << file.boards.size() << " boards to "
      << config.board_file.string() << '\n';
}

void CmdEstimateRhf(const ExperimentConfig& config, std::ostream& out,
                    std::ostream& err) {
  config.Validate();
  const BoardFile file = LoadBoardsFor(config, err);
  SolveCache cache;
  ResultRow row;
  row.kind = ResultRow::Kind::kRhf;
  row.variant = config.variant;
  row.seed = config.seed;
  row.boards = static_cast<std::int64_t>(file.boards.size());
  row.scale = config.scale;
  row.method = config.method;
  row.prefix_len = config.prefix_len;
  row.rhf = EstimateRhf(file.boards, config.variant, config.prefix_len,
                        config.seed, cache);
  AppendResults(config.results_file, {row});
  PrintRhfHeader(out);
  PrintRhfLine(row, out);
  out << "(" << row.rhf.boards_used << " positions, "
      << row.rhf.boards_discarded << " boards discarded)\n";
}

void CmdContest(const ExperimentConfig& config, std::ostream& out,
                std::ostream& err) {
  config.Validate();
  const BoardFile file = LoadBoardsFor(config, err);
  std::vector<ResultRow> existing;
  if (std::filesystem::exists(config.results_file) &&
      std::filesystem::file_size(config.results_file) > 0) {
    existing = ReadResults(config.results_file);
  }
  ContestOptions opts;
  opts.alpha = config.alpha;
  opts.min_critical = config.min_critical;
  opts.method = config.method;
  opts.scale = config.scale;

  out << "minimax against product, " << VariantName(config.variant) << '\n';
  PrintContestHeader(out);
  for (int depth = config.depths.first; depth <= config.depths.last; ++depth) {
    ResultRow row;
    row.kind = ResultRow::Kind::kContest;
    row.variant = config.variant;
    row.seed = config.seed;
    row.boards = static_cast<std::int64_t>(file.boards.size());
    row.scale = config.scale;
    row.method = config.method;
    row.alpha = config.alpha;
    row.min_critical = config.min_critical;
    row.contest.depth = depth;
    auto done = std::find_if(existing.begin(), existing.end(),
                             [&](const ResultRow& r) { return r.SameKey(row); });
    if (done != existing.end()) {
      PrintContestRow(done->contest, out);
      continue;
    }
    row.contest = RunContest(file.boards, config.variant, depth, opts);
    AppendResults(config.results_file, {row});
    PrintContestRow(row.contest, out);
  }
}

void CmdReport(std::span<const std::filesystem::path> results,
               std::ostream& out) {
  if (results.empty()) throw std::invalid_argument("report: no results files");
  std::vector<ResultRow> rows;
  for (const auto& path : results) {
    std::vector<ResultRow> part = ReadResults(path);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  WriteReport(rows, out);
}

void WriteReport(const std::vector<ResultRow>& rows, std::ostream& out) {
  // Later rows replace earlier ones with the same variant (and depth).
  std::map<Variant, ResultRow> rhf;
  std::map<Variant, std::map<int, ContestRow>> contests;
  for (const ResultRow& r : rows) {
    if (r.kind == ResultRow::Kind::kRhf) {
      rhf[r.variant] = r;
    } else {
      contests[r.variant][r.contest.depth] = r.contest;
    }
  }

  out << "== rate of heuristic flaw ==\n";
  if (rhf.empty()) {
    out << "no rhf records\n";
  } else {
    PrintRhfHeader(out);
    for (const auto& [v, row] : rhf) PrintRhfLine(row, out);
  }
  std::vector<Variant> missing;
  for (Variant v : kAllVariants) {
    if (!rhf.contains(v)) missing.push_back(v);
  }
  if (!missing.empty()) {
    out << "comparison incomplete: no rhf record for";
    for (Variant v : missing) out << ' ' << VariantName(v);
    out << '\n';
  }
  std::vector<Variant> by_rhf;
  for (const auto& [v, row] : rhf) {
    if (row.rhf.rhf()) by_rhf.push_back(v);
  }
  std::stable_sort(by_rhf.begin(), by_rhf.end(), [&](Variant a, Variant b) {
    return *rhf[a].rhf.rhf() > *rhf[b].rhf.rhf();
  });
  for (std::size_t i = 0; i < by_rhf.size(); ++i) {
    for (std::size_t j = i + 1; j < by_rhf.size(); ++j) {
      const RhfEstimate& hi = rhf[by_rhf[i]].rhf;
      const RhfEstimate& lo = rhf[by_rhf[j]].rhf;
      const TwoProportionResult t = TwoProportionZ(
          static_cast<std::int64_t>(hi.fwin_count),
          static_cast<std::int64_t>(hi.f_count),
          static_cast<std::int64_t>(lo.fwin_count),
          static_cast<std::int64_t>(lo.f_count));
      char buf[200];
      std::snprintf(buf, sizeof buf,
                    "%s > %s: z = %.2f, one-tailed p = %.4f (%s at 95%%)",
                    std::string(VariantName(by_rhf[i])).c_str(),
                    std::string(VariantName(by_rhf[j])).c_str(), t.z,
                    t.p_value, t.p_value < 0.05 ? "significant" : "not significant");
      out << buf << '\n';
    }
  }
  if (by_rhf.size() > 1) {
    out << "(pooled two-proportion z-test; the tallies are treated as "
           "independent samples)\n";
  }

  for (const auto& [v, table] : contests) {
    out << "\n== minimax against product: " << VariantName(v) << " ==\n";
    PrintContestHeader(out);
    for (const auto& [depth, c] : table) PrintContestRow(c, out);
  }

  out << "\n== rhf and product performance ==\n";
  std::vector<Variant> complete;
  for (Variant v : kAllVariants) {
    if (rhf.contains(v) && rhf[v].rhf.rhf() && contests.contains(v)) {
      complete.push_back(v);
    }
  }
  if (complete.size() < kAllVariants.size()) {
    out << "comparison incomplete: needs rhf and contest results for all "
           "three variants\n";
    return;
  }
  // Product performance: mean share of critical pairs won by product.
  std::map<Variant, double> product_share;
  for (Variant v : complete) {
    double sum = 0.0;
    int n = 0;
    for (const auto& [depth, c] : contests[v]) {
      if (c.degenerate) continue;
      sum += 1.0 - c.pct;
      ++n;
    }
    product_share[v] = n == 0 ? 0.5 : sum / n;
  }
  std::vector<Variant> by_product = complete;
  std::stable_sort(by_product.begin(), by_product.end(),
                   [&](Variant a, Variant b) {
                     return product_share[a] > product_share[b];
                   });
  std::vector<Variant> rhf_rank = complete;
  std::stable_sort(rhf_rank.begin(), rhf_rank.end(), [&](Variant a, Variant b) {
    return *rhf[a].rhf.rhf() > *rhf[b].rhf.rhf();
  });
  auto rank_of = [](const std::vector<Variant>& order, Variant v) {
    return static_cast<double>(std::find(order.begin(), order.end(), v) -
                               order.begin());
  };
  double d2 = 0.0;
  for (Variant v : complete) {
    const double d = rank_of(rhf_rank, v) - rank_of(by_product, v);
    d2 += d * d;
  }
  const double n = static_cast<double>(complete.size());
  const double rho = 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
  auto print_order = [&](const char* label, const std::vector<Variant>& order) {
    out << label;
    for (std::size_t i = 0; i < order.size(); ++i) {
      out << (i ? " > " : "") << VariantName(order[i]);
    }
    out << '\n';
  };
  print_order("rhf ranking:     ", rhf_rank);
  print_order("product ranking: ", by_product);
  for (Variant v : by_product) {
    out << "  " << VariantName(v) << ": product wins "
        << FormatPercent(product_share[v])
        << " of critical pairs on average over depths\n";
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "rank correlation: %+.2f (%s)\n", rho,
                rho > 0 ? "positive" : rho < 0 ? "negative" : "none");
  out << buf;
}

int Run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kalah search experiments: rhf estimation and rule contests",
               "kalahlab"};
  app.require_subcommand(1);

  std::optional<std::string> config_file, save_config, variant, depths, out_path,
      board_file, scale, method;
  std::optional<int> holes, max_stones, boards, prefix_len, min_critical;
  std::optional<double> alpha;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> report_inputs;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_file, "JSON experiment config");
    cmd->add_option("--save-config", save_config,
                    "Write the effective config as JSON");
    cmd->add_option("--variant", variant,
                    "standard, no-premature or no-go-again");
    cmd->add_option("--holes", holes, "Pits per side");
    cmd->add_option("--max-stones", max_stones, "Maximum stones per pit");
    cmd->add_option("--seed", seed, "Master seed");
    cmd->add_option("--board-file", board_file, "Board file path");
  };

  CLI::App* gen = app.add_subcommand("gen-boards", "Generate random boards");
  add_common(gen);
  gen->add_option("--boards", boards, "Number of boards");
  gen->add_option("--out", out_path, "Board file to write");

  CLI::App* est = app.add_subcommand("estimate-rhf", "Estimate rhf");
  add_common(est);
  est->add_option("--prefix-len", prefix_len, "Random moves before sampling");
  est->add_option("--out", out_path, "Results CSV to append to");

  CLI::App* con =
      app.add_subcommand("contest", "Play minimax against product");
  add_common(con);
  con->add_option("--depths", depths, "Depth range A..B");
  con->add_option("--alpha", alpha, "Significance level");
  con->add_option("--min-critical", min_critical,
                  "Critical pairs before stopping is considered");
  con->add_option("--scale", scale, "Product tip map: total or remaining");
  con->add_option("--method", method, "Tail method: normal or exact");
  con->add_option("--out", out_path, "Results CSV to append to");

  CLI::App* rep = app.add_subcommand("report", "Summarize results files");
  rep->add_option("results", report_inputs, "Results CSV files")->required();
  rep->add_option("--out", out_path, "Report file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (rep->parsed()) {
      std::vector<std::filesystem::path> paths(report_inputs.begin(),
                                               report_inputs.end());
      if (out_path) {
        std::ofstream f(*out_path);
        if (!f) throw std::runtime_error("cannot write report " + *out_path);
        CmdReport(paths, f);
      } else {
        CmdReport(paths, out);
      }
      return 0;
    }

    ExperimentConfig config =
        config_file ? LoadConfig(*config_file) : ExperimentConfig{};
    if (variant) config.variant = ParseVariant(*variant);
    if (holes) config.holes = *holes;
    if (max_stones) config.max_stones = *max_stones;
    if (boards) config.boards = *boards;
    if (prefix_len) config.prefix_len = *prefix_len;
    if (depths) config.depths = ParseDepthRange(*depths);
    if (alpha) config.alpha = *alpha;
    if (min_critical) config.min_critical = *min_critical;
    if (seed) config.seed = *seed;
    if (scale) config.scale = ParseScale(*scale);
    if (method) config.method = ParseTailMethod(*method);
    if (board_file) config.board_file = *board_file;
    if (out_path) {
      if (gen->parsed()) {
        config.board_file = *out_path;
      } else {
        config.results_file = *out_path;
      }
    }
    config.Validate();
    if (save_config) SaveConfig(config, *save_config);

    if (gen->parsed()) {
      CmdGenBoards(config, out);
    } else if (est->parsed()) {
      CmdEstimateRhf(config, out, err);
    } else {
      CmdContest(config, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace kalahlab::cli
