#include "qqft/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qqft {

EngineeredEvolution::EngineeredEvolution(MomentumModel model, ProtocolOptions options)
    : model_(std::move(model)), options_(options), transform_(build_qqft(model_.grid)) {
  model_.validate_shape();
  if (model_.dimension > 2) {
    throw std::invalid_argument("EngineeredEvolution: only d = 1 and d = 2 are supported");
  }
  hamiltonian_blocks_.reserve(model_.cell_count());
  evolution_blocks_.reserve(model_.cell_count());
  for (std::size_t cell = 0; cell < model_.cell_count(); ++cell) {
    hamiltonian_blocks_.push_back(model_.block(cell));
    evolution_blocks_.push_back(evolve_block(hamiltonian_blocks_.back(), model_.time));
  }
}

Matrix EngineeredEvolution::unitary(const NoiseModel& noise) const {
  const auto l = static_cast<Eigen::Index>(model_.orbitals);
  Matrix forward = Matrix::Identity(1, 1);
  Matrix inverse = Matrix::Identity(1, 1);
  for (int axis = 0; axis < model_.dimension; ++axis) {
    forward = kron(forward, transform_.apply(noise, forward_channel(axis), Direction::kForward));
    inverse = kron(inverse, transform_.apply(noise, adjoint_channel(axis), Direction::kAdjoint));
  }
  const Matrix orbital_identity = Matrix::Identity(l, l);
  forward = kron(forward, orbital_identity);
  inverse = kron(inverse, orbital_identity);

  const double diag_delta = options_.noise_on_diagonal ? noise.delta(kDiagonalChannel, 0) : 0.0;
  // exp(-i H_D T) V^dagger, one l-row block per momentum cell.
  Matrix evolved(inverse.rows(), inverse.cols());
  for (std::size_t cell = 0; cell < evolution_blocks_.size(); ++cell) {
    const Matrix block = diag_delta == 0.0
                             ? evolution_blocks_[cell]
                             : evolve_block(hamiltonian_blocks_[cell], (1.0 + diag_delta) * model_.time);
    const auto row = static_cast<Eigen::Index>(cell) * l;
    evolved.middleRows(row, l).noalias() = block * inverse.middleRows(row, l);
  }
  return forward * evolved;
}

Matrix build_protocol_unitary(const MomentumModel& model, const NoiseModel& noise,
                              const ProtocolOptions& options) {
  return EngineeredEvolution(model, options).unitary(noise);
}

SpectrumResult SpectrumResult::from_bands(std::vector<std::vector<double>> bands) {
  SpectrumResult out;
  out.bands = std::move(bands);
  for (auto& band : out.bands) std::sort(band.begin(), band.end());
  if (out.bands.empty() || out.bands.front().empty()) return out;
  const auto& lower = out.bands[0];
  out.band_width = lower.back() - lower.front();
  if (out.bands.size() < 2) {
    out.band_gap = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  const auto& upper = out.bands[1];
  out.band_gap = upper.front() - lower.back();
  const double scale = std::max({1.0, std::abs(lower.front()), std::abs(upper.back())});
  out.degenerate_split = out.band_gap <= 1e-9 * scale;
  return out;
}

std::vector<double> SpectrumResult::all_energies() const {
  std::vector<double> all;
  for (const auto& band : bands) all.insert(all.end(), band.begin(), band.end());
  std::sort(all.begin(), all.end());
  return all;
}

SpectrumResult extract_spectrum(const Matrix& u, double time, int orbitals) {
  if (!(time > 0.0)) throw std::invalid_argument("extract_spectrum: time must be positive");
  if (orbitals < 1 || u.rows() % orbitals != 0) {
    throw DimensionError("extract_spectrum: dimension is not a multiple of the orbital count");
  }
  UnitaryEigensystem eig;
  try {
    eig = unitary_eigensystem(u, false);
  } catch (const WrappedPhaseError& e) {
    throw InvalidEvolutionTimeError(std::string("extract_spectrum: eigenphase wraps, choose a "
                                                "shorter evolution time (") +
                                    e.what() + ")");
  }
  std::vector<double> energies(static_cast<std::size_t>(eig.phases.size()));
  for (std::size_t i = 0; i < energies.size(); ++i) {
    energies[i] = -eig.phases(static_cast<Eigen::Index>(i)) / time;
  }
  std::sort(energies.begin(), energies.end());
  const std::size_t per_band = energies.size() / static_cast<std::size_t>(orbitals);
  std::vector<std::vector<double>> bands(static_cast<std::size_t>(orbitals));
  for (std::size_t b = 0; b < bands.size(); ++b) {
    bands[b].assign(energies.begin() + static_cast<std::ptrdiff_t>(b * per_band),
                    energies.begin() + static_cast<std::ptrdiff_t>((b + 1) * per_band));
  }
  return SpectrumResult::from_bands(std::move(bands));
}

SpectrumResult block_spectrum(const std::vector<Matrix>& blocks, double time) {
  if (blocks.empty()) return {};
  if (!(time > 0.0)) throw std::invalid_argument("block_spectrum: time must be positive");
  const auto l = static_cast<std::size_t>(blocks.front().rows());
  std::vector<std::vector<double>> bands(l);
  for (const Matrix& block : blocks) {
    const UnitaryEigensystem eig = small_unitary_eigensystem(block);
    std::vector<double> energies(l);
    for (std::size_t i = 0; i < l; ++i) {
      const double phase = eig.phases(static_cast<Eigen::Index>(i));
      if (std::abs(phase) >= kPi - 1e-6) {
        throw InvalidEvolutionTimeError("block_spectrum: eigenphase reaches the branch cut");
      }
      energies[i] = -phase / time;
    }
    std::sort(energies.begin(), energies.end());
    for (std::size_t b = 0; b < l; ++b) bands[b].push_back(energies[b]);
  }
  return SpectrumResult::from_bands(std::move(bands));
}

RuntimeEstimate estimate_runtime_for_depth(std::uint64_t depth, double tunneling_over_recoil) {
  if (!(tunneling_over_recoil > 0.0)) {
    throw std::invalid_argument("estimate_runtime: tunneling ratio must be positive");
  }
  // J in rad/s; a full swap between neighbours takes pi / (2 J).
  const double tunneling = tunneling_over_recoil * kTwoPi * kLithiumRecoilHz;
  const double step_ms = 1e3 * kPi / (2.0 * tunneling);
  return RuntimeEstimate{depth, step_ms, step_ms * static_cast<double>(depth)};
}

RuntimeEstimate estimate_runtime(unsigned n, double tunneling_over_recoil) {
  return estimate_runtime_for_depth(depth_formula(n), tunneling_over_recoil);
}

}  // namespace qqft
