#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qqft/linalg.hpp"

namespace qqft {

/// Translation-invariant model given by its Bloch matrices H(k_m) on a
/// uniform N^d Brillouin-zone grid, k_m = 2 pi m / N along every axis.
///
/// Time is in ms and energies in rad/ms (angular frequency), so 2 pi kHz is
/// written as 2 pi.
struct MomentumModel {
  using Sampler = std::function<Matrix(std::span<const std::size_t> cell)>;

  int dimension = 1;
  int orbitals = 1;
  std::size_t grid = 2;
  double time = 1.0;
  Sampler sampler;

  std::size_t cell_count() const;
  std::size_t total_dim() const { return cell_count() * static_cast<std::size_t>(orbitals); }

  /// Grid coordinates (m_1, ..., m_d) of a flat cell index.
  std::vector<std::size_t> cell_coordinates(std::size_t cell) const;

  /// Sample and check one Bloch block (l x l, Hermitian within 1e-12).
  Matrix block(std::size_t cell) const;

  void validate_shape() const;
};

/// Shared site (x) orbital layout: ((m_1 N + m_2) N + ...) l + alpha. The
/// Kronecker order V_1 (x) V_2 (x) ... (x) I_l produces the same layout.
std::size_t composite_index(std::span<const std::size_t> cell, std::size_t alpha,
                            std::size_t grid, std::size_t orbitals);

}  // namespace qqft
