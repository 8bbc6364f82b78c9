#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qqft/engine.hpp"
#include "qqft/linalg.hpp"
#include "qqft/noise.hpp"

namespace qqft {

/// Spacetime grid (m, n) in Z_N x Z_N, m the time step and n the site,
/// partitioned into orbits of L = [[gamma, 1], [gamma^2 - 1, gamma]].
struct LorentzLattice {
  std::size_t n = 33;
  int gamma = 2;
  /// Orbits, each listed from its smallest (m, n) point in map order.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> classes;
  /// class_of[m * N + n] is the index of the orbit holding (m, n).
  std::vector<std::size_t> class_of;

  std::size_t class_count() const { return classes.size(); }
};

/// L (m, n)^T mod N.
std::pair<std::size_t, std::size_t> lorentz_map(std::size_t m, std::size_t n, int gamma,
                                                std::size_t size);

LorentzLattice equivalence_classes(std::size_t size, int gamma);

/// Candidate actions of the Lorentz group on dispersion points (k, j), where
/// k is a momentum index and j the quantized energy E_k tau N / 2 pi.
enum class MomentumAction {
  /// (k, j) -> (gamma k + j, (gamma^2 - 1) k + gamma j), from phase
  /// covariance of the plane waves under L.
  kTranspose,
  /// (k, j) -> (gamma k + (gamma^2 - 1) j, k + gamma j), roles of k and j
  /// exchanged.
  kExchanged,
};

std::pair<std::size_t, std::size_t> momentum_action(std::size_t k, std::size_t j, int gamma,
                                                    std::size_t size, MomentumAction action);

/// E_k = (2 pi / (N tau)) j(k) with tau = 1.
struct Dispersion {
  std::size_t n = 0;
  int gamma = 2;
  MomentumAction action = MomentumAction::kTranspose;
  std::vector<std::size_t> j;

  double energy(std::size_t k) const;
  /// Graph {(k, j(k))} maps onto itself under `action`.
  bool graph_invariant() const;
  bool odd() const;
};

struct DispersionNotFoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Lexicographically smallest nontrivial odd j-table whose graph is a union
/// of orbits of `action`. Throws DispersionNotFoundError (with the orbit
/// structure in the message) if none exists or the search exceeds
/// `node_limit` nodes.
Dispersion build_dispersion(std::size_t size, int gamma,
                            MomentumAction action = MomentumAction::kTranspose,
                            std::size_t node_limit = 1'000'000);

/// P_{n1}(m, n) = |U(m tau)_{(n1 + n) mod N, n1}|^2, stored n1-major.
struct ProbabilityTensor {
  std::size_t n = 0;
  std::vector<double> values;

  double& at(std::size_t n1, std::size_t m, std::size_t site) {
    return values[(n1 * n + m) * n + site];
  }
  double at(std::size_t n1, std::size_t m, std::size_t site) const {
    return values[(n1 * n + m) * n + site];
  }
};

struct GreensResult {
  /// greens(n, m) = -i U(m tau)_{n, 0}.
  Matrix greens;
  ProbabilityTensor probability;
};

/// Stroboscopic propagator U(m tau) = V D^m V^dagger for a dispersion, with
/// V the local QQFT on N sites and D = diag(exp(-i E_k tau)). The forward
/// and inverse sequences draw independent noise; one realization is shared
/// by every m.
class PoincareCrystal {
 public:
  explicit PoincareCrystal(Dispersion dispersion);

  const Dispersion& dispersion() const { return dispersion_; }
  const CompiledSequence& transform() const { return transform_; }

  /// U(m tau) for m = 0 .. N - 1 through the (noisy) sequence.
  std::vector<Matrix> evolution(const NoiseModel& noise) const;
  /// U(m tau) from the exact DFT matrix.
  std::vector<Matrix> exact_evolution() const;

  GreensResult greens(const NoiseModel& noise) const;
  GreensResult exact_greens() const;

 private:
  std::vector<Matrix> evolve(const Matrix& forward, const Matrix& inverse) const;

  Dispersion dispersion_;
  CompiledSequence transform_;
};

GreensResult greens_from_evolution(const std::vector<Matrix>& evolution);

/// sqrt((1 / N^3) sum_alpha sum_n1 sum_{(m, n) in C_alpha} (P - mean_alpha)^2),
/// mean_alpha taken over the class and over n1.
double s_lorentz(const ProbabilityTensor& p, const LorentzLattice& lattice);

/// Root-mean-square difference of two tensors.
double s_total(const ProbabilityTensor& noisy, const ProbabilityTensor& clean);

/// Tries kTranspose, then kExchanged, and keeps the first dispersion whose
/// exact propagator has s_lorentz below `tolerance`.
Dispersion build_validated_dispersion(std::size_t size, int gamma, double tolerance = 1e-10);

struct SymmetryRow {
  double sigma = 0.0;
  double mean_s_lorentz = 0.0;
  double stderr_s_lorentz = 0.0;
  double mean_s_total = 0.0;
  double stderr_s_total = 0.0;
  std::size_t realizations = 0;
};

/// S_L and S_P averaged over realizations (stream ids 0 .. realizations - 1)
/// for each sigma. S_P is measured against the noiseless QQFT route.
std::vector<SymmetryRow> symmetry_noise_sweep(const PoincareCrystal& crystal,
                                              const LorentzLattice& lattice,
                                              const std::vector<double>& sigmas,
                                              std::size_t realizations, std::uint64_t seed,
                                              std::size_t workers = 1);

}  // namespace qqft
