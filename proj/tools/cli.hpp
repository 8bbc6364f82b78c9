#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qqft::cli {

/// Everything that determines the numeric output of a run. `workers` and
/// `out_dir` are deliberately left out of the digest and manifest: they
/// change where and how fast results are produced, never their content.
struct RunConfig {
  std::string command;

  // compile / verify
  unsigned n = 0;
  std::size_t sites = 0;
  std::string sequence_file;
  double tolerance = 1e-10;

  // shared experiment settings
  std::uint64_t seed = 1;
  std::vector<double> sigmas;
  std::size_t realizations = 100;
  std::size_t grid = 0;
  bool noise_on_diagonal = false;

  // flatband
  double mass = 0.0;
  double phi = -1.5707963267948966;
  std::size_t phase_grid = 32;
  double phase_sigma = 3e-2;
  std::size_t phase_realizations = 1;

  // poincare
  int gamma = 2;

  std::string out_dir = ".";
  std::size_t workers = 1;
};

/// Canonical JSON (sorted keys, shortest round-trip numbers) of the fields
/// that affect results.
std::string canonical_config(const RunConfig& config);

/// FNV-1a 64 of canonical_config, as 16 hex digits.
std::string config_digest(const RunConfig& config);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

/// Parses argv-style arguments (without the program name) and runs the
/// selected subcommand. Returns the process exit code: 0 on success, 1 when
/// a verification fails, 2 on usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_compile(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out);
int cmd_flatband(const RunConfig& config, std::ostream& out);
int cmd_poincare(const RunConfig& config, std::ostream& out);

}  // namespace qqft::cli
