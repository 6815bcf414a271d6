#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace slx::cli {

enum class Command { Eig, EigZero, Norms, Wdist, Family, VerifyThm1, VerifyThm2, Search };
enum class Format { Csv, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSolver = 3;

/// Parsed command line. Only the fields of the selected command are used.
struct RunConfig {
  Command command = Command::Eig;
  std::optional<Format> format;  // per-command default when unset
  std::optional<std::string> output_path;
  std::uint64_t seed = 0;

  // potentials: inline JSON or a file path
  std::string q_json;
  std::string q_file;
  std::string g_json;
  std::string g_file;

  double k0sq = 0.0;
  double k1sq = 0.0;
  bool samples = false;
  int steps_per_cell = 16;
  double theta_tolerance = 1e-10;

  std::vector<double> p_list;
  std::size_t grid = 4096;

  int statement = 1;
  double zeta = 0.5;
  long long n = 2;
  double gamma = 0.5;
  double rho = 10.0;
  double floor = 0.1;
  int spikes = 100;
  double height = 0.0;  // spike train: 0 tunes the height automatically
  double nu = 0.0;      // 0 picks the default exponent

  std::vector<long long> n_list;
  std::vector<double> rho_list;

  std::string mode = "max";
  int cells = 8;
  int iters = 500;
  double height_cap = 0.0;  // 0 = no cap
  int rounds = 1;
  double cap_growth = 2.0;
};

/// Parses argv-style arguments (without the program name). Throws
/// slx::ContractError on invalid input. Returns nullopt when help was
/// printed to `out`.
std::optional<RunConfig> parse(const std::vector<std::string>& args, std::ostream& out);

/// Executes a parsed configuration, writing the artifact to the output path or
/// `out`. Library errors propagate.
void execute(const RunConfig& config, std::ostream& out);

/// parse + execute with error mapping: 0 success, 2 validation error, 3 solver
/// failure. Errors are written to `err` as one JSON object on one line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slx::cli
