#pragma once

// Command-line front end and on-disk formats.
//
// Comparison CSV (one row per recorded step):
//   n,u_r,u_c,energy_interaction,energy_str,alpha,gamma,degenerate
// Reals are printed with 17 significant digits (printf "%.17g"), alpha is
// empty when undefined, degenerate is 0/1, lines end in LF.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "photon_kick/experiment.hpp"
#include "photon_kick/kinematics.hpp"

namespace photon_kick::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitNotConverged = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

inline constexpr std::string_view kCsvHeader =
    "n,u_r,u_c,energy_interaction,energy_str,alpha,gamma,degenerate";
inline constexpr std::string_view kSweepCsvHeader =
    "epsilon,max_abs_deviation,mean_abs_deviation,sample_count,failed";
inline constexpr const char* kConfigEnvVar = "PHOTON_KICK_CONFIG";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Subcommand { Run, Compare, Sweep };

struct CliInvocation {
  Subcommand subcommand = Subcommand::Run;
  SimulationConfig config;
  std::vector<double> epsilons;  // one entry unless sweeping
  std::optional<std::string> out_path;
};

/// Parses arguments (program name excluded). Precedence: flags, then the
/// --config file (or the file named by env_config_path), then defaults.
/// Throws UsageError on bad input and IoError if the config file is unreadable.
CliInvocation parse_args(const std::vector<std::string>& args,
                         const std::optional<std::string>& env_config_path = std::nullopt);

std::string format_number(double value);

void emit_csv(const std::vector<ComparisonRow>& rows, std::ostream& out);
void write_csv_file(const std::vector<ComparisonRow>& rows, const std::string& path);

/// Strict reader for the comparison CSV. Throws FormatError.
std::vector<ComparisonRow> parse_csv(std::istream& in);

void emit_summary(const RunSummary& summary, std::ostream& out);
int summary_exit_code(const RunSummary& summary);

void emit_sweep_csv(const std::vector<SweepResult>& results, std::ostream& out);

/// Full command execution; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const std::optional<std::string>& env_config_path = std::nullopt);

}  // namespace photon_kick::cli
