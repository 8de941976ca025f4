#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "robinsl/potential.hpp"

namespace robinsl::cli {

enum class Command { eigen, extrema, scan_f, verify };
enum class Format { json, csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitInputError = 2;

struct CliConfig {
  Command command = Command::extrema;
  RobinBC bc;
  double tol = 1e-10;
  std::uint64_t seed = 1;
  std::string output;  // empty = stdout
  Format format = Format::json;

  // extrema --grid
  std::vector<double> grid_k0sq;
  std::vector<double> grid_k1sq;

  // scan-f
  double mu_min = -2.0;
  double mu_max = 3.0;
  int mu_steps = 51;
  int zeta_steps = 11;

  // verify
  int samples = 1000;
  int pieces_max = 16;
  int class_sign = 0;
  int jobs = 1;
  int approach_depth = 0;
  bool concentrated = false;

  // eigen
  int grid_points = 2001;
};

/// Executes one command. Writes results to `out` (or config.output) and
/// diagnostics to `err`. Returns 0 on success, 1 when `verify` finds
/// violations, 2 on input errors.
int run(const CliConfig& config, const std::optional<std::string>& potential_file, std::ostream& out,
        std::ostream& err);

/// Parses argv-style arguments (without the program name) and runs.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace robinsl::cli
