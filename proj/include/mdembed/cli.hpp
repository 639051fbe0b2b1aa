#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mdembed {

/// Everything that determines a run. Serialized into every JSON artifact so
/// a run can be replayed from its outputs.
struct RunConfig {
  std::string command;  // gen | embed | analyze | bench

  // Generator parameters, used when no input file is given.
  std::string kind = "grid2d";
  std::size_t n = 0;
  std::size_t side = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t dim = 0;
  std::size_t degree = 3;
  bool weighted = false;

  std::string input;   // metric CSV or "graph" edge list
  std::string coords;  // analyze: embedding CSV (default <out>/embedding.csv)

  std::string method = "measured-descent";
  std::optional<double> p;  // unset: 2, or inf for linf-minorfree
  std::size_t samples = 0;  // 0: 8 ceil(log2 n)
  std::uint64_t seed = 1;
  int s = 3;
  double c = 2.0;
  std::string measure = "uniform";  // uniform | file:PATH
  std::string out = ".";
  bool dump_pairs = false;
  bool timing = false;

  std::size_t k = 3;          // analyze: simplex size for the eta report
  std::size_t subsets = 200;  // analyze: sampled k-subsets
  std::vector<std::size_t> sizes{16, 32, 64, 128};  // bench sweep
};

/// The config as a JSON object string (stable key order).
std::string config_json(const RunConfig& config);

/// Executes one command. Returns the process exit status; diagnostics go to
/// `err`, a short summary to `log`.
int run(const RunConfig& config, std::ostream& log, std::ostream& err);

}  // namespace mdembed
