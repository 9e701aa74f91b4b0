#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ldar::cli {

struct RunConfig {
  std::string command;  // simulate, fit, select, diagnose, backtest, mc
  std::string input;
  std::string column = "0";
  std::size_t p = 1;
  std::size_t pmax = 5;
  std::string method = "gqmle";  // gqmle, eqmle or both
  std::size_t M = 6;
  std::vector<double> taus{0.05, 0.10, 0.90, 0.95};
  std::size_t window = 350;
  std::optional<std::uint64_t> seed;
  std::size_t reps = 1000;
  std::string out;
  std::string format = "text";
  std::string plot_out;
  bool demean = false;
  bool warm_start = true;
  std::size_t jobs = 1;

  // simulate
  std::vector<double> alpha;
  double omega = 1.0;
  std::vector<double> beta;
  std::string dist = "normal";
  std::string mode = "var";
  std::size_t n = 1000;
  std::size_t burn_in = 500;

  // mc
  int experiment = 1;
  double c1 = 0.0;
  double c2 = 0.0;
};

/// Executes one command. Reports go to `out` unless config.out names a file;
/// errors are written to `err` as one JSON object per line. Returns the exit
/// status: 0 ok, 2 usage, 3 data, 4 numerical, 5 I/O.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (flags, optional --config file of key = value lines) and runs.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ldar::cli
