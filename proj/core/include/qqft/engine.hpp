#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qqft/circuit.hpp"
#include "qqft/linalg.hpp"
#include "qqft/model.hpp"
#include "qqft/noise.hpp"

namespace qqft {

/// Hermitian H with U = exp(-i H), taken on the principal branch: every
/// eigenvalue of H lies in (-pi, pi], so an eigenvalue -1 of U maps to +pi.
class HermitianGenerator {
 public:
  static HermitianGenerator from_unitary(const Matrix& u, double tolerance = 1e-10);

  const Matrix& matrix() const { return matrix_; }
  const RealVector& eigenvalues() const { return eigenvalues_; }
  Eigen::Index dim() const { return matrix_.rows(); }

  /// exp(-i scale H), evaluated in the eigenbasis.
  Matrix exponentiate(double scale = 1.0) const;

 private:
  Matrix matrix_;
  Matrix eigenvectors_;
  RealVector eigenvalues_;
};

struct LocalGenerator {
  std::size_t site = 0;
  std::size_t step = 0;
  Matrix gate;  // exact local gate matrix
  HermitianGenerator generator;
};

LocalGenerator gate_to_generator(const GateSpec& gate);

enum class Direction { kForward, kAdjoint };

/// Generators for every gate of a sequence, computed once and reused across
/// noise realizations.
class CompiledSequence {
 public:
  explicit CompiledSequence(CircuitSequence seq);

  const CircuitSequence& sequence() const { return seq_; }
  std::span<const LocalGenerator> generators() const { return generators_; }

  /// Forward: prod_s exp(-i (1 + delta_s) H_s) in application order.
  /// Adjoint: the inverse sequence, gates in reverse with exp(+i (1 + delta_s) H_s).
  /// One delta per Hamiltonian step, drawn from `channel`. A step whose delta
  /// is exactly zero uses the exact gate matrices.
  Matrix apply(const NoiseModel& noise, std::uint64_t channel = 0,
               Direction direction = Direction::kForward) const;

 private:
  CircuitSequence seq_;
  std::vector<LocalGenerator> generators_;
};

/// One-shot form of CompiledSequence::apply.
Matrix apply_noisy_sequence(const CircuitSequence& seq, const NoiseModel& noise,
                            std::uint64_t channel = 0, Direction direction = Direction::kForward);

/// Kronecker product with the configured dimension limit.
Matrix tensor_product(const Matrix& a, const Matrix& b);

/// exp(-i H_m T) for one Hermitian block.
Matrix evolve_block(const Matrix& h, double time);

/// Block-diagonal exp(-i H_D T) in the shared site (x) orbital layout.
Matrix diagonal_momentum_evolution(const MomentumModel& model, double time);

/// The blocks of diagonal_momentum_evolution, one per grid cell.
std::vector<Matrix> diagonal_blocks(const MomentumModel& model, double time);

}  // namespace qqft
