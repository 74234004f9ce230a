#include "photon_kick/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "photon_kick/errors.hpp"

namespace photon_kick::cli {
namespace {

// Unparsed settings as they appear on the command line or in a config file.
struct RawSettings {
  std::optional<std::string> epsilon;
  std::optional<std::string> tolerance;
  std::optional<std::string> max_steps;
  std::optional<std::string> stride;
  std::optional<std::string> targets;
  std::optional<std::string> convention;

  void overlay(const RawSettings& other) {
    auto take = [](std::optional<std::string>& mine, const std::optional<std::string>& theirs) {
      if (theirs) mine = theirs;
    };
    take(epsilon, other.epsilon);
    take(tolerance, other.tolerance);
    take(max_steps, other.max_steps);
    take(stride, other.stride);
    take(targets, other.targets);
    take(convention, other.convention);
  }
};

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return std::string(text.substr(first, last - first + 1));
}

double parse_real(const std::string& text, std::string_view what) {
  const std::string value = trim(text);
  if (value.empty()) throw UsageError(std::string(what) + ": empty number");
  errno = 0;
  char* end = nullptr;
  const double parsed = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || errno == ERANGE || !std::isfinite(parsed)) {
    throw UsageError(std::string(what) + ": malformed number '" + value + "'");
  }
  return parsed;
}

std::uint64_t parse_count(const std::string& text, std::string_view what) {
  const std::string value = trim(text);
  std::uint64_t parsed = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
  if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
    throw UsageError(std::string(what) + ": malformed integer '" + value + "'");
  }
  return parsed;
}

std::vector<double> parse_real_list(const std::string& text, std::string_view what) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) values.push_back(parse_real(item, what));
  if (values.empty() || (!text.empty() && text.back() == ',')) {
    throw UsageError(std::string(what) + ": malformed list '" + text + "'");
  }
  return values;
}

RawSettings read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");

  RawSettings settings;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto equals = line.find('=');
    if (equals == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(line_number) + ": expected 'key = value'");
    }
    std::string key = trim(std::string_view(line).substr(0, equals));
    std::replace(key.begin(), key.end(), '_', '-');
    std::string value = trim(std::string_view(line).substr(equals + 1));

    if (key == "epsilon") {
      settings.epsilon = value;
    } else if (key == "tolerance") {
      settings.tolerance = value;
    } else if (key == "max-steps") {
      settings.max_steps = value;
    } else if (key == "stride") {
      settings.stride = value;
    } else if (key == "targets") {
      settings.targets = value;
    } else if (key == "convention") {
      settings.convention = value;
    } else {
      throw UsageError(path + ":" + std::to_string(line_number) + ": unknown key '" + key + "'");
    }
  }
  if (in.bad()) throw IoError("error while reading config file '" + path + "'");
  return settings;
}

SimulationConfig build_config(const RawSettings& raw, std::vector<double>& epsilons) {
  SimulationConfig config;
  if (raw.epsilon) {
    epsilons = parse_real_list(*raw.epsilon, "--epsilon");
  } else {
    epsilons = {config.epsilon};
  }
  config.epsilon = epsilons.front();
  if (raw.tolerance) config.step_tolerance = parse_real(*raw.tolerance, "--tolerance");
  if (raw.max_steps) config.max_steps = parse_count(*raw.max_steps, "--max-steps");
  if (raw.stride) config.sample_stride = parse_count(*raw.stride, "--stride");
  if (raw.targets) {
    config.velocity_targets = parse_real_list(*raw.targets, "--targets");
  } else {
    config.velocity_targets = default_velocity_targets();
  }
  if (raw.convention) {
    auto convention = convention_from_string(trim(*raw.convention));
    if (!convention) {
      throw UsageError("--convention must be 'literal' or 'first-kick-undilated', got '" +
                       *raw.convention + "'");
    }
    config.convention = *convention;
  }

  for (double epsilon : epsilons) {
    SimulationConfig probe = config;
    probe.epsilon = epsilon;
    try {
      probe.validate();
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
  }
  return config;
}

struct SubcommandOptions {
  RawSettings flags;
  std::optional<std::string> out;
  std::optional<std::string> config;
};

void add_common_options(CLI::App& sub, SubcommandOptions& options) {
  sub.add_option("--epsilon", options.flags.epsilon,
                 "Photon energy in units of m c^2 (comma-separated list for sweep)");
  sub.add_option("--tolerance", options.flags.tolerance,
                 "Stop once sqrt(1 - u^2) falls below this value");
  sub.add_option("--max-steps", options.flags.max_steps, "Cap on the number of absorptions");
  sub.add_option("--stride", options.flags.stride, "Record every k-th step");
  sub.add_option("--targets", options.flags.targets,
                 "Comma-separated velocities at which rows are force-recorded");
  sub.add_option("--convention", options.flags.convention,
                 "Dilation-bracket convention: literal | first-kick-undilated");
  sub.add_option("--out", options.out, "Output CSV file");
  sub.add_option("--config", options.config, "key = value config file");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  return file;
}

void finish_output(std::ostream& out, const std::string& what) {
  out.flush();
  if (!out) throw IoError("write to " + what + " failed");
}

}  // namespace

CliInvocation parse_args(const std::vector<std::string>& args,
                         const std::optional<std::string>& env_config_path) {
  CLI::App app{"Photon-absorption acceleration of a single electron", "photon-kick"};
  app.require_subcommand(1, 1);

  SubcommandOptions run_options;
  SubcommandOptions compare_options;
  SubcommandOptions sweep_options;
  auto* run = app.add_subcommand("run", "Iterate to convergence and print a summary");
  auto* compare = app.add_subcommand("compare", "Emit alpha/gamma comparison rows as CSV");
  auto* sweep = app.add_subcommand("sweep", "alpha-gamma deviation for several epsilons");
  add_common_options(*run, run_options);
  add_common_options(*compare, compare_options);
  add_common_options(*sweep, sweep_options);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    if (message.empty()) message = e.get_name();
    throw UsageError(message);
  }

  CliInvocation invocation;
  SubcommandOptions* options = &run_options;
  if (compare->parsed()) {
    invocation.subcommand = Subcommand::Compare;
    options = &compare_options;
  } else if (sweep->parsed()) {
    invocation.subcommand = Subcommand::Sweep;
    options = &sweep_options;
  }

  RawSettings merged;
  if (options->config) {
    merged = read_config_file(*options->config);
  } else if (env_config_path && !env_config_path->empty()) {
    merged = read_config_file(*env_config_path);
  }
  merged.overlay(options->flags);

  invocation.config = build_config(merged, invocation.epsilons);
  if (invocation.subcommand != Subcommand::Sweep && invocation.epsilons.size() != 1) {
    throw UsageError("--epsilon takes a single value except with 'sweep'");
  }
  invocation.out_path = options->out;
  return invocation;
}

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void emit_csv(const std::vector<ComparisonRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& row : rows) {
    out << row.n << ',' << format_number(row.u_r) << ',' << format_number(row.u_c) << ','
        << format_number(row.energy_interaction) << ',' << format_number(row.energy_str) << ',';
    if (row.alpha) out << format_number(*row.alpha);
    out << ',' << format_number(row.gamma) << ',' << (row.degenerate ? '1' : '0') << '\n';
  }
}

void write_csv_file(const std::vector<ComparisonRow>& rows, const std::string& path) {
  auto file = open_output(path);
  emit_csv(rows, file);
  finish_output(file, "'" + path + "'");
}

std::vector<ComparisonRow> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("missing header");
  if (line != kCsvHeader) throw FormatError("unexpected header '" + line + "'");

  auto real = [](const std::string& field, int line_number) {
    char* end = nullptr;
    const double value = std::strtod(field.c_str(), &end);
    if (field.empty() || end != field.c_str() + field.size()) {
      throw FormatError("line " + std::to_string(line_number) + ": bad number '" + field + "'");
    }
    return value;
  };

  std::vector<ComparisonRow> rows;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    std::vector<std::string> fields;
    std::stringstream stream(line);
    std::string field;
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (fields.size() != 8) {
      throw FormatError("line " + std::to_string(line_number) + ": expected 8 fields");
    }

    ComparisonRow row;
    const auto [ptr, ec] =
        std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), row.n);
    if (fields[0].empty() || ec != std::errc() || ptr != fields[0].data() + fields[0].size()) {
      throw FormatError("line " + std::to_string(line_number) + ": bad step index");
    }
    row.u_r = real(fields[1], line_number);
    row.u_c = real(fields[2], line_number);
    row.energy_interaction = real(fields[3], line_number);
    row.energy_str = real(fields[4], line_number);
    if (!fields[5].empty()) row.alpha = real(fields[5], line_number);
    row.gamma = real(fields[6], line_number);
    if (fields[7] == "0") {
      row.degenerate = false;
    } else if (fields[7] == "1") {
      row.degenerate = true;
    } else {
      throw FormatError("line " + std::to_string(line_number) + ": degenerate must be 0 or 1");
    }
    rows.push_back(row);
  }
  return rows;
}

void emit_summary(const RunSummary& summary, std::ostream& out) {
  out << "converged=" << (summary.converged ? "true" : "false") << '\n'
      << "steps=" << summary.steps_taken << '\n'
      << "final_u=" << format_number(summary.final_u) << '\n'
      << "final_kinetic=" << format_number(summary.final_kinetic) << '\n'
      << "final_sum=" << format_number(summary.final_dilation_sum) << '\n'
      << "convention=" << to_string(summary.convention) << '\n'
      << "stop=" << to_string(summary.stop_reason) << '\n';
}

int summary_exit_code(const RunSummary& summary) {
  return summary.converged ? kExitSuccess : kExitNotConverged;
}

void emit_sweep_csv(const std::vector<SweepResult>& results, std::ostream& out) {
  out << kSweepCsvHeader << '\n';
  for (const auto& result : results) {
    out << format_number(result.epsilon) << ',';
    if (!result.failed) {
      out << format_number(result.max_abs_deviation) << ','
          << format_number(result.mean_abs_deviation);
    } else {
      out << ',';
    }
    out << ',' << result.sample_count << ',' << (result.failed ? '1' : '0') << '\n';
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const std::optional<std::string>& env_config_path) {
  // --help is not an error; CLI11 signals it through an exception.
  if (std::any_of(args.begin(), args.end(),
                  [](const std::string& a) { return a == "--help" || a == "-h"; })) {
    out << "usage: photon-kick run|compare|sweep [--epsilon E[,E...]] [--tolerance T]\n"
           "         [--max-steps N] [--stride K] [--targets U1,U2,...]\n"
           "         [--convention literal|first-kick-undilated] [--out FILE] [--config FILE]\n";
    return kExitSuccess;
  }

  try {
    const CliInvocation invocation = parse_args(args, env_config_path);
    switch (invocation.subcommand) {
      case Subcommand::Run: {
        const RunOutput result = run_to_convergence(invocation.config);
        if (invocation.out_path) write_csv_file(result.rows, *invocation.out_path);
        emit_summary(result.summary, out);
        finish_output(out, "standard output");
        return summary_exit_code(result.summary);
      }
      case Subcommand::Compare: {
        const auto rows = compare_models(invocation.config);
        if (invocation.out_path) {
          write_csv_file(rows, *invocation.out_path);
        } else {
          emit_csv(rows, out);
          finish_output(out, "standard output");
        }
        return kExitSuccess;
      }
      case Subcommand::Sweep: {
        const auto results = sweep_epsilon(invocation.epsilons, invocation.config);
        if (invocation.out_path) {
          auto file = open_output(*invocation.out_path);
          emit_sweep_csv(results, file);
          finish_output(file, "'" + *invocation.out_path + "'");
        } else {
          emit_sweep_csv(results, out);
          finish_output(out, "standard output");
        }
        for (const auto& result : results) {
          if (result.failed) err << "epsilon " << format_number(result.epsilon) << ": "
                                 << result.error << '\n';
        }
        const bool any_failed = std::any_of(results.begin(), results.end(),
                                            [](const SweepResult& r) { return r.failed; });
        return any_failed ? kExitNotConverged : kExitSuccess;
      }
    }
  } catch (const UsageError& e) {
    err << "photon-kick: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "photon-kick: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace photon_kick::cli
