#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qqft/circuit.hpp"
#include "qqft/haldane.hpp"
#include "qqft/poincare.hpp"
#include "qqft/protocol.hpp"
#include "qqft/sequence_io.hpp"

#ifndef QQFT_VERSION
#define QQFT_VERSION "0.0.0"
#endif

namespace qqft::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

const std::vector<double> kFlatbandSigmas{0.0, 5e-4, 1e-3, 2.5e-3, 5e-3, 1e-2};
const std::vector<double> kPoincareSigmas{0.0, 1e-3, 5e-3, 1e-2, 2e-2, 5e-2};

json config_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  if (c.command == "compile") {
    j["n"] = c.n;
    j["N"] = c.sites;
  } else if (c.command == "verify") {
    j["sequence"] = c.sequence_file;
    j["tolerance"] = c.tolerance;
  } else {
    j["seed"] = c.seed;
    j["sigma"] = c.sigmas;
    j["realizations"] = c.realizations;
    j["grid"] = c.grid;
  }
  if (c.command == "flatband") {
    j["noise_on_diagonal"] = c.noise_on_diagonal;
    j["mass"] = c.mass;
    j["phi"] = c.phi;
    j["phase_grid"] = c.phase_grid;
    j["phase_sigma"] = c.phase_sigma;
    j["phase_realizations"] = c.phase_realizations;
  }
  if (c.command == "poincare") j["gamma"] = c.gamma;
  return j;
}

std::string header_comment(const RunConfig& c) {
  return "# qqft " QQFT_VERSION " " + c.command + " config=" + config_digest(c);
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const RunConfig& config, const std::string& extra = {})
      : stream_(path, std::ios::binary) {
    if (!stream_) throw std::runtime_error("cannot open " + path.string() + " for writing");
    stream_ << header_comment(config);
    if (!extra.empty()) stream_ << ' ' << extra;
    stream_ << '\n';
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) stream_ << ',';
      stream_ << cells[i];
    }
    stream_ << '\n';
  }

 private:
  std::ofstream stream_;
};

void write_json(const fs::path& path, const json& value) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw std::runtime_error("cannot open " + path.string() + " for writing");
  stream << value.dump(2) << '\n';
}

json manifest(const RunConfig& config, const std::vector<std::string>& outputs) {
  json m;
  m["tool"] = "qqft";
  m["version"] = QQFT_VERSION;
  m["config"] = config_json(config);
  m["digest"] = config_digest(config);
  m["outputs"] = outputs;
  return m;
}

fs::path prepare_out_dir(const RunConfig& config) {
  fs::path dir(config.out_dir);
  fs::create_directories(dir);
  return dir;
}

std::string fmt(double v) { return format_double(v); }
std::string fmt(std::size_t v) { return std::to_string(v); }

void add_experiment_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--seed", c.seed, "Noise seed");
  sub->add_option("--sigma", c.sigmas, "Noise strengths (space or comma separated)")
      ->delimiter(',');
  sub->add_option("--realizations", c.realizations, "Noise realizations per sigma")
      ->check(CLI::PositiveNumber);
  sub->add_option("--grid", c.grid, "Sites per axis");
  sub->add_option("--out", c.out_dir, "Output directory");
  sub->add_option("--workers", c.workers, "Worker threads (does not change results)")
      ->check(CLI::PositiveNumber);
}

}  // namespace

std::string format_double(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

std::string canonical_config(const RunConfig& config) { return config_json(config).dump(); }

std::string config_digest(const RunConfig& config) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_config(config)) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << hash;
  return out.str();
}

int cmd_compile(const RunConfig& config, std::ostream& out) {
  if ((config.n == 0) == (config.sites == 0)) {
    throw UsageError("compile: give exactly one of --n (N = 2^n, n >= 1) or --N (N >= 2)");
  }
  if (config.n > 20) throw UsageError("compile: --n must be at most 20");
  const std::size_t sites = config.n ? std::size_t{1} << config.n : config.sites;
  if (sites < 2) throw UsageError("compile: N must be at least 2");
  const CircuitSequence seq = build_qqft(sites);
  const bool radix2 = is_power_of_two(sites);

  const fs::path dir = prepare_out_dir(config);
  const std::string name = "qqft_N" + std::to_string(sites) + ".json";
  save_sequence(seq, (dir / name).string());

  const RuntimeEstimate runtime = estimate_runtime_for_depth(seq.depth());
  out << "N=" << sites << " construction=" << (radix2 ? "radix2" : "givens")
      << " depth=" << seq.depth() << " gates=" << seq.gate_count()
      << " scaling=" << (radix2 ? "N log N" : "N^2") << '\n';
  out << "estimated cycle " << format_double(runtime.total_ms) << " ms at "
      << format_double(runtime.step_ms) << " ms per step\n";
  out << "wrote " << (dir / name).string() << '\n';
  return 0;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  if (!fs::exists(config.sequence_file)) {
    throw UsageError("verify: no such file: " + config.sequence_file);
  }
  CircuitSequence seq;
  try {
    seq = load_sequence(config.sequence_file);
  } catch (const InvalidSequenceError& e) {
    out << "FAIL invalid sequence: " << e.what() << '\n';
    return 1;
  }
  const double error =
      max_abs_diff_up_to_phase(sequence_to_unitary(seq), dft_matrix(seq.n_sites()));
  const bool pass = error < config.tolerance;
  out << (pass ? "PASS" : "FAIL") << " N=" << seq.n_sites() << " depth=" << seq.depth()
      << " max_abs_error=" << format_double(error) << '\n';
  return pass ? 0 : 1;
}

int cmd_flatband(const RunConfig& config, std::ostream& out) {
  const fs::path dir = prepare_out_dir(config);
  HaldaneParams params;
  params.mass = config.mass;
  params.phi = config.phi;

  SweepOptions sweep;
  sweep.grid = config.grid;
  sweep.workers = config.workers;
  sweep.protocol.noise_on_diagonal = config.noise_on_diagonal;

  std::vector<std::string> outputs;
  const auto rows =
      noise_sweep_gap_width(params, config.sigmas, config.realizations, config.seed, sweep);
  {
    CsvWriter csv(dir / "gap_width.csv", config);
    csv.row({"sigma", "mean_gap", "stderr_gap", "mean_width", "stderr_width", "mean_ratio",
             "stderr_ratio", "realizations"});
    for (const auto& r : rows) {
      csv.row({fmt(r.sigma), fmt(r.mean_gap), fmt(r.stderr_gap), fmt(r.mean_width),
               fmt(r.stderr_width), fmt(r.mean_ratio), fmt(r.stderr_ratio), fmt(r.realizations)});
      out << "sigma=" << fmt(r.sigma) << " G=" << fmt(r.mean_gap) << " W=" << fmt(r.mean_width)
          << " W/G=" << fmt(r.mean_ratio) << '\n';
    }
  }
  outputs.push_back("gap_width.csv");

  if (config.phase_grid > 0) {
    PhaseDiagramOptions pd;
    pd.phi_cells = config.phase_grid;
    pd.mass_cells = config.phase_grid;
    pd.sigma = config.phase_sigma;
    pd.realizations = config.phase_realizations;
    pd.sweep = sweep;
    const auto cells = phase_diagram(params, pd, config.seed);
    CsvWriter csv(dir / "phase_diagram.csv", config);
    csv.row({"phi", "mass", "bott", "chern", "gap_closed"});
    for (const auto& c : cells) {
      csv.row({fmt(c.phi), fmt(c.mass), std::isnan(c.bott) ? "nan" : fmt(c.bott),
               c.chern ? std::to_string(*c.chern) : "", fmt(c.gap_closed)});
    }
    outputs.push_back("phase_diagram.csv");
    out << "phase diagram: " << cells.size() << " cells\n";
  }

  write_json(dir / "manifest.json", manifest(config, outputs));
  return 0;
}

int cmd_poincare(const RunConfig& config, std::ostream& out) {
  const fs::path dir = prepare_out_dir(config);
  const Dispersion dispersion = build_validated_dispersion(config.grid, config.gamma);
  const LorentzLattice lattice = equivalence_classes(config.grid, config.gamma);
  const PoincareCrystal crystal(dispersion);

  std::vector<std::string> outputs;
  json disp;
  disp["N"] = dispersion.n;
  disp["gamma"] = dispersion.gamma;
  disp["action"] = dispersion.action == MomentumAction::kTranspose ? "transpose" : "exchanged";
  disp["j"] = dispersion.j;
  disp["digest"] = config_digest(config);
  write_json(dir / "dispersion.json", disp);
  outputs.push_back("dispersion.json");

  for (std::size_t s = 0; s < config.sigmas.size(); ++s) {
    const GreensResult g = crystal.greens(NoiseModel{config.sigmas[s], config.seed, 0});
    for (const bool imag : {false, true}) {
      const std::string name =
          "greens_" + std::to_string(s) + (imag ? "_im" : "_re") + ".csv";
      CsvWriter csv(dir / name, config, "sigma=" + fmt(config.sigmas[s]) + " rows=n cols=m");
      for (Eigen::Index n = 0; n < g.greens.rows(); ++n) {
        std::vector<std::string> cells;
        for (Eigen::Index m = 0; m < g.greens.cols(); ++m) {
          cells.push_back(fmt(imag ? g.greens(n, m).imag() : g.greens(n, m).real()));
        }
        csv.row(cells);
      }
      outputs.push_back(name);
    }
  }

  const auto rows = symmetry_noise_sweep(crystal, lattice, config.sigmas, config.realizations,
                                         config.seed, config.workers);
  {
    CsvWriter csv(dir / "symmetry.csv", config);
    csv.row({"sigma", "s_lorentz", "stderr_s_lorentz", "s_total", "stderr_s_total",
             "realizations"});
    for (const auto& r : rows) {
      csv.row({fmt(r.sigma), fmt(r.mean_s_lorentz), fmt(r.stderr_s_lorentz), fmt(r.mean_s_total),
               fmt(r.stderr_s_total), fmt(r.realizations)});
      out << "sigma=" << fmt(r.sigma) << " S_L=" << fmt(r.mean_s_lorentz)
          << " S_P=" << fmt(r.mean_s_total) << '\n';
    }
  }
  outputs.push_back("symmetry.csv");

  write_json(dir / "manifest.json", manifest(config, outputs));
  return 0;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Local QQFT compiler and Hamiltonian-engineering simulator", "qqft"};
  app.set_version_flag("--version", QQFT_VERSION);
  app.set_config("--config", "", "Read options from a key=value (TOML/INI) file");
  app.require_subcommand(1);

  auto* compile = app.add_subcommand("compile", "Build a QQFT gate sequence");
  auto* opt_n = compile->add_option("--n", c.n, "Radix-2 size exponent, N = 2^n");
  auto* opt_sites = compile->add_option("--N", c.sites, "Number of sites");
  opt_n->excludes(opt_sites);
  compile->add_option("--out", c.out_dir, "Output directory");

  auto* verify = app.add_subcommand("verify", "Check a sequence file against the DFT matrix");
  verify->add_option("sequence", c.sequence_file, "Sequence JSON file")->required();
  verify->add_option("--tolerance", c.tolerance, "Maximum entrywise error");

  auto* flatband = app.add_subcommand("flatband", "Flat Chern band noise sweep and phase diagram");
  add_experiment_options(flatband, c);
  flatband->add_flag("--noise-on-diagonal", c.noise_on_diagonal,
                     "Also perturb the diagonal evolution layer");
  flatband->add_option("--mass", c.mass, "Sublattice mass M (units of t1)");
  flatband->add_option("--phi", c.phi, "Haldane flux phase");
  flatband->add_option("--phase-grid", c.phase_grid, "Phase diagram cells per axis (0 skips)");
  flatband->add_option("--phase-sigma", c.phase_sigma, "Noise strength for the phase diagram");
  flatband->add_option("--phase-realizations", c.phase_realizations,
                       "Realizations per phase diagram cell")
      ->check(CLI::PositiveNumber);

  auto* poincare = app.add_subcommand("poincare", "1+1D Poincare crystal Green's function");
  add_experiment_options(poincare, c);
  poincare->add_option("--gamma", c.gamma, "Lorentz boost parameter (>= 2)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (compile->parsed()) {
      c.command = "compile";
      return cmd_compile(c, out);
    }
    if (verify->parsed()) {
      c.command = "verify";
      return cmd_verify(c, out);
    }
    if (flatband->parsed()) {
      c.command = "flatband";
      if (c.sigmas.empty()) c.sigmas = kFlatbandSigmas;
      if (c.grid == 0) c.grid = 16;
      return cmd_flatband(c, out);
    }
    c.command = "poincare";
    if (c.sigmas.empty()) c.sigmas = kPoincareSigmas;
    if (c.grid == 0) c.grid = 33;
    return cmd_poincare(c, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace qqft::cli
