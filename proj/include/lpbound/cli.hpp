#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpbound::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitUsage = 64;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { json, csv, text };

struct RunConfig {
  // "bound", "verify-witness", "improve", "corollary", "mub certify-fab",
  // "mub sweep", "mub optimize-c", "oracle max-b"
  std::string subcommand;

  std::string group;      // "6", "2,3", "2x3" or a JSON file
  std::string forbidden;  // "1,5", "0:1,0:2" or a JSON file
  std::string witness;    // GroupFunction JSON file (h)
  std::string second;     // GroupFunction JSON file (K)
  std::string locations;  // C, same syntax as forbidden
  std::string pinned;     // pinned points, same syntax as forbidden
  std::optional<std::size_t> m;

  double a_phase = 0.0;
  double b_phase = 0.0;
  int samples = 10;
  int grid = 24;
  int g0_grid = 720;

  double tol = 1e-9;
  double margin_tol = 1e-9;
  std::string out;
  Format format = Format::json;
  int jobs = 1;
  std::uint64_t seed = 1;
};

// Throws UsageError on bad arguments. `--help` is reported as a UsageError
// whose message is the help text, with `help_requested` set.
RunConfig parse_args(const std::vector<std::string>& args, bool* help_requested = nullptr);

// Runs one subcommand; the report goes to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse_args + run, writing to --out when given.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpbound::cli
