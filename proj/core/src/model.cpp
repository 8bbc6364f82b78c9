#include "qqft/model.hpp"

#include <stdexcept>
#include <string>

namespace qqft {

std::size_t MomentumModel::cell_count() const {
  std::size_t cells = 1;
  for (int i = 0; i < dimension; ++i) cells *= grid;
  return cells;
}

std::vector<std::size_t> MomentumModel::cell_coordinates(std::size_t cell) const {
  std::vector<std::size_t> coords(static_cast<std::size_t>(dimension));
  for (int axis = dimension - 1; axis >= 0; --axis) {
    coords[static_cast<std::size_t>(axis)] = cell % grid;
    cell /= grid;
  }
  return coords;
}

void MomentumModel::validate_shape() const {
  if (dimension < 1) throw std::invalid_argument("MomentumModel: dimension must be >= 1");
  if (orbitals < 1) throw std::invalid_argument("MomentumModel: orbitals must be >= 1");
  if (grid < 2) throw std::invalid_argument("MomentumModel: grid size must be >= 2");
  if (!sampler) throw std::invalid_argument("MomentumModel: missing sampler");
  if (total_dim() > kMaxDimension) throw DimensionError("MomentumModel: total dimension too large");
}

Matrix MomentumModel::block(std::size_t cell) const {
  const auto coords = cell_coordinates(cell);
  Matrix h = sampler(coords);
  if (h.rows() != orbitals || h.cols() != orbitals) {
    throw DimensionError("MomentumModel: sampler returned a block of the wrong size");
  }
  if (hermiticity_defect(h) > 1e-12) {
    throw NotHermitianError("MomentumModel: Bloch block at cell " + std::to_string(cell) +
                            " is not Hermitian");
  }
  return h;
}

std::size_t composite_index(std::span<const std::size_t> cell, std::size_t alpha,
                            std::size_t grid, std::size_t orbitals) {
  std::size_t flat = 0;
  for (std::size_t m : cell) flat = flat * grid + m;
  return flat * orbitals + alpha;
}

}  // namespace qqft
