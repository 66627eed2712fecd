#pragma once

// Experiment driver behind the `kalahlab` executable: configuration,
// board and results files, and the four subcommands.
//
// Board file (v1):
//   # kalahlab-boards v1
//   # seed=42 holes=3 max_stones=6 count=1000
//   south=3,4,4 north=6,2,4 stores=0,0 turn=S
//   ...
//
// Results file (v1): a "# kalahlab-results v1" line, the column header
// kResultsColumns, then one row per rhf estimate (kind "rhf") or contest
// depth (kind "contest"). Fields that do not apply to a kind are empty.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kalahlab/contest.hpp"
#include "kalahlab/engine.hpp"
#include "kalahlab/rhf.hpp"
#include "kalahlab/search.hpp"
#include "kalahlab/stats.hpp"

namespace kalahlab::cli {

inline constexpr std::string_view kBoardsMagic = "# kalahlab-boards v1";
inline constexpr std::string_view kResultsMagic = "# kalahlab-results v1";
inline constexpr std::string_view kResultsColumns =
    "kind,variant,depth,seed,boards,prefix_len,alpha,min_critical,scale,"
    "method,f_count,fwin_count,rhf,boards_used,boards_discarded,pairs,"
    "minimax_better,pct,p_value,conclusion,boards_consumed";

struct DepthRange {
  int first = 2;
  int last = 7;

  friend bool operator==(const DepthRange&, const DepthRange&) = default;
};

// "A..B" or a single depth "A".
DepthRange ParseDepthRange(std::string_view text);
std::string DepthRangeToString(const DepthRange& range);

std::string_view TailMethodName(TailMethod m);
TailMethod ParseTailMethod(std::string_view name);

struct ExperimentConfig {
  Variant variant = Variant::kStandard;
  int holes = 3;
  int max_stones = 6;
  int boards = 1000;
  int prefix_len = 4;
  DepthRange depths;
  double alpha = 0.05;
  int min_critical = 100;
  std::uint64_t seed = 42;
  ProbabilityScale scale = ProbabilityScale::kTotalStones;
  TailMethod method = TailMethod::kNormal;
  std::filesystem::path board_file = "boards.txt";
  std::filesystem::path results_file = "results.csv";

  // Throws std::invalid_argument naming the offending field.
  void Validate() const;

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);

ExperimentConfig LoadConfig(const std::filesystem::path& path);
void SaveConfig(const ExperimentConfig& config,
                const std::filesystem::path& path);

struct BoardFile {
  std::uint64_t seed = 0;
  int holes = 0;
  int max_stones = 0;
  std::vector<Board> boards;
};

// Boards i = 0..n-1 drawn in order from Rng(Rng::Derive(seed, "boards")).
std::vector<Board> GenerateBoards(const ExperimentConfig& config);

void WriteBoardFile(std::ostream& out, const BoardFile& file);
// Errors name the 1-based line. Entries must match the header: the hole
// count, pits within [0, max_stones], empty stores and at most
// 2 * holes * max_stones stones.
BoardFile ReadBoardFile(std::istream& in);
BoardFile ReadBoardFile(const std::filesystem::path& path);

// Column values of one results row; absent fields stay empty.
struct ResultRow {
  enum class Kind { kRhf, kContest };
  Kind kind = Kind::kRhf;
  Variant variant = Variant::kStandard;
  std::uint64_t seed = 0;
  std::int64_t boards = 0;
  ProbabilityScale scale = ProbabilityScale::kTotalStones;
  TailMethod method = TailMethod::kNormal;

  // kind == kRhf
  int prefix_len = 0;
  RhfEstimate rhf;

  // kind == kContest
  double alpha = 0.05;
  int min_critical = 100;
  ContestRow contest;

  // Rows that describe the same run.
  bool SameKey(const ResultRow& o) const;
};

std::string FormatRow(const ResultRow& row);
// Throws std::invalid_argument on a malformed line.
ResultRow ParseRow(std::string_view line);

// Appends rows, writing the two header lines first when the file is new or
// empty. Throws if an existing file has a different header.
void AppendResults(const std::filesystem::path& path,
                   const std::vector<ResultRow>& rows);
// Errors name the 1-based line.
std::vector<ResultRow> ReadResults(std::istream& in);
std::vector<ResultRow> ReadResults(const std::filesystem::path& path);

// "26.7%"; significance below 0.001 prints as "<0.1%".
std::string FormatPercent(double fraction);
std::string FormatSignificance(double p);

// Subcommands. Human-readable output goes to `out`, warnings to `err`.
void CmdGenBoards(const ExperimentConfig& config, std::ostream& out);
void CmdEstimateRhf(const ExperimentConfig& config, std::ostream& out,
                    std::ostream& err);
void CmdContest(const ExperimentConfig& config, std::ostream& out,
                std::ostream& err);
void CmdReport(std::span<const std::filesystem::path> results,
               std::ostream& out);

// Report body from already-parsed rows.
void WriteReport(const std::vector<ResultRow>& rows, std::ostream& out);

// Entry point used by main(); returns the process exit code.
int Run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace kalahlab::cli
