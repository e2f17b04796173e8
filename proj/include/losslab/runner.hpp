#pragma once

// Parameter-sweep front end: grid expansion, deterministic parallel row
// evaluation, and CSV/JSON table output.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace losslab {

// Exit code contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitTheoremViolation = 2;
inline constexpr int kExitConfigError = 3;

inline constexpr const char* kSchemaVersion = "losslab.v1";

struct RunConfig {
  std::string command;  // bounds | lemmas | codebook | tails
  std::vector<double> eta{0.5};
  std::vector<double> ns{1.0};
  std::vector<std::uint64_t> n{10};
  std::vector<double> rate;
  std::vector<double> p{0.0};
  std::vector<double> delta{0.1};
  std::vector<double> delta1;   // empty = preset C(delta, ns-delta)^(n/2)
  std::vector<double> delta2{0.1};
  std::vector<double> delta3;   // empty = midpoint of admissible interval
  std::uint64_t seed = 1;
  std::uint64_t samples = 0;    // 0 disables Monte Carlo columns
  std::uint64_t codebook_messages = 16;
  std::uint64_t codebook_seeds = 20;
  std::string out;              // empty = stdout
  std::string format = "csv";   // csv | json

  nlohmann::json to_json() const;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<nlohmann::json> rows;  // objects keyed by column name
  bool theorem_violation = false;
};

// Comma lists and start:stop:step ranges.
std::vector<double> parse_grid(const std::string& text);

Table run_bounds(const RunConfig& cfg);
Table run_lemmas(const RunConfig& cfg);
Table run_codebook(const RunConfig& cfg);
Table run_tails(const RunConfig& cfg);

Table run_command(const RunConfig& cfg);

// 17 significant digits, '.' decimal separator, \n line endings; the
// schema version string is embedded in the header.
std::string table_to_csv(const Table& t, const RunConfig& cfg);
std::string table_to_json(const Table& t, const RunConfig& cfg);

// Column documentation for --schema.
std::string schema_dump();

// Worker cap: LAB_THREADS, default = logical cores.
unsigned worker_threads();

int run_cli(int argc, char** argv);

}  // namespace losslab
