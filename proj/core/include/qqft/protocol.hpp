#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qqft/circuit.hpp"
#include "qqft/engine.hpp"
#include "qqft/model.hpp"
#include "qqft/noise.hpp"

namespace qqft {

/// Default evolution time 1/(2 pi) ms; with |d| = 2 pi rad/ms the eigenphases
/// sit at +-1 rad, well inside (-pi, pi).
inline constexpr double kDefaultEvolutionTime = 1.0 / kTwoPi;

/// Lithium recoil energy E_R / hbar = 2 pi x 25.12 kHz (1064 nm lattice).
inline constexpr double kLithiumRecoilHz = 25.12e3;

struct ProtocolOptions {
  /// Also scale the diagonal phase layer by (1 + delta). Off by default: noise
  /// acts on the transform sequences only.
  bool noise_on_diagonal = false;
};

/// Noise channels used inside one realization.
inline constexpr std::uint64_t forward_channel(int axis) { return 2 * static_cast<std::uint64_t>(axis); }
inline constexpr std::uint64_t adjoint_channel(int axis) {
  return 2 * static_cast<std::uint64_t>(axis) + 1;
}
inline constexpr std::uint64_t kDiagonalChannel = 1000;

/// U = V exp(-i H_D T) V^dagger with V = V^(1) (x) ... (x) V^(d) (x) I_l.
///
/// V^(k) is the local QQFT sequence along axis k and V^dagger is executed as
/// the inverse sequence; each of the 2d sequences draws its own noise.
class EngineeredEvolution {
 public:
  EngineeredEvolution(MomentumModel model, ProtocolOptions options = {});

  const MomentumModel& model() const { return model_; }
  const CompiledSequence& transform() const { return transform_; }

  Matrix unitary(const NoiseModel& noise) const;

 private:
  MomentumModel model_;
  ProtocolOptions options_;
  CompiledSequence transform_;
  std::vector<Matrix> hamiltonian_blocks_;
  std::vector<Matrix> evolution_blocks_;
};

Matrix build_protocol_unitary(const MomentumModel& model, const NoiseModel& noise,
                              const ProtocolOptions& options = {});

struct InvalidEvolutionTimeError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Band energies E_{n,alpha} in rad/ms. bands[0] is the lowest band; each
/// band is sorted ascending.
struct SpectrumResult {
  std::vector<std::vector<double>> bands;
  /// min(upper) - max(lower) of the two lowest bands (NaN for one band).
  double band_gap = 0.0;
  /// max(lower) - min(lower).
  double band_width = 0.0;
  /// Set when the lower/upper split falls on (numerically) degenerate levels.
  bool degenerate_split = false;

  static SpectrumResult from_bands(std::vector<std::vector<double>> bands);
  std::vector<double> all_energies() const;
};

/// Global assignment: E = -arg(lambda) / T, sorted, split into `orbitals`
/// equal bands. Throws InvalidEvolutionTimeError if any eigenphase reaches
/// the branch cut.
SpectrumResult extract_spectrum(const Matrix& u, double time, int orbitals);

/// Translation-invariant assignment: eigenphases of each conserved momentum
/// block sorted separately, band alpha = alpha-th level of every block.
SpectrumResult block_spectrum(const std::vector<Matrix>& blocks, double time);

struct RuntimeEstimate {
  std::uint64_t depth = 0;
  double step_ms = 0.0;
  double total_ms = 0.0;
};

/// Duration of one QQFT cycle, depth x pi / (2 J), J = ratio x E_R.
RuntimeEstimate estimate_runtime(unsigned n, double tunneling_over_recoil = 0.01);
RuntimeEstimate estimate_runtime_for_depth(std::uint64_t depth, double tunneling_over_recoil = 0.01);

}  // namespace qqft
