#include "qqft/engine.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace qqft {

HermitianGenerator HermitianGenerator::from_unitary(const Matrix& u, double tolerance) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw DimensionError("HermitianGenerator: expected a non-empty square matrix");
  }
  const double defect = unitarity_defect(u);
  if (defect > tolerance) {
    throw NotUnitaryError("HermitianGenerator: input is not unitary (defect " +
                          std::to_string(defect) + ")");
  }
  const UnitaryEigensystem eig = small_unitary_eigensystem(u);
  HermitianGenerator out;
  out.eigenvectors_ = eig.vectors;
  out.eigenvalues_.resize(eig.phases.size());
  // U = exp(-i H)  =>  eigenvalue of H is -arg(lambda), kept in (-pi, pi].
  for (Eigen::Index i = 0; i < eig.phases.size(); ++i) {
    out.eigenvalues_(i) = principal_phase(-eig.phases(i));
  }
  out.matrix_ = eig.vectors * out.eigenvalues_.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  return out;
}

Matrix HermitianGenerator::exponentiate(double scale) const {
  Vector phases(eigenvalues_.size());
  for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) {
    phases(i) = std::polar(1.0, -scale * eigenvalues_(i));
  }
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

LocalGenerator gate_to_generator(const GateSpec& gate) {
  Matrix local = gate.local_matrix();
  auto generator = HermitianGenerator::from_unitary(local);
  return LocalGenerator{gate.first_site(), gate.step, std::move(local), std::move(generator)};
}

CompiledSequence::CompiledSequence(CircuitSequence seq) : seq_(std::move(seq)) {
  seq_.validate();
  generators_.reserve(seq_.gate_count());
  for (const GateSpec& g : seq_.gates()) generators_.push_back(gate_to_generator(g));
}

Matrix CompiledSequence::apply(const NoiseModel& noise, std::uint64_t channel,
                               Direction direction) const {
  const auto n = static_cast<Eigen::Index>(seq_.n_sites());
  std::vector<double> deltas(seq_.depth());
  for (std::size_t s = 0; s < deltas.size(); ++s) deltas[s] = noise.delta(channel, s);

  Matrix u = Matrix::Identity(n, n);
  auto step_gate = [&](const LocalGenerator& g, bool adjoint) -> Matrix {
    const double delta = deltas[g.step];
    if (delta == 0.0) return adjoint ? Matrix(g.gate.adjoint()) : g.gate;
    return g.generator.exponentiate(adjoint ? -(1.0 + delta) : 1.0 + delta);
  };
  if (direction == Direction::kForward) {
    for (const LocalGenerator& g : generators_) apply_local(u, step_gate(g, false), g.site);
  } else {
    for (auto it = generators_.rbegin(); it != generators_.rend(); ++it) {
      apply_local(u, step_gate(*it, true), it->site);
    }
  }
  return u;
}

Matrix apply_noisy_sequence(const CircuitSequence& seq, const NoiseModel& noise,
                            std::uint64_t channel, Direction direction) {
  return CompiledSequence(seq).apply(noise, channel, direction);
}

Matrix tensor_product(const Matrix& a, const Matrix& b) { return kron(a, b); }

Matrix evolve_block(const Matrix& h, double time) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  Vector phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    phases(i) = std::polar(1.0, -solver.eigenvalues()(i) * time);
  }
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

std::vector<Matrix> diagonal_blocks(const MomentumModel& model, double time) {
  model.validate_shape();
  std::vector<Matrix> blocks;
  blocks.reserve(model.cell_count());
  for (std::size_t cell = 0; cell < model.cell_count(); ++cell) {
    blocks.push_back(evolve_block(model.block(cell), time));
  }
  return blocks;
}

Matrix diagonal_momentum_evolution(const MomentumModel& model, double time) {
  const auto blocks = diagonal_blocks(model, time);
  const auto l = static_cast<Eigen::Index>(model.orbitals);
  const auto dim = static_cast<Eigen::Index>(model.total_dim());
  Matrix out = Matrix::Zero(dim, dim);
  for (std::size_t cell = 0; cell < blocks.size(); ++cell) {
    const auto offset = static_cast<Eigen::Index>(cell) * l;
    out.block(offset, offset, l, l) = blocks[cell];
  }
  return out;
}

}  // namespace qqft
