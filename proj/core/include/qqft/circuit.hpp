#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

#include "qqft/linalg.hpp"

namespace qqft {

/// Exchange of the amplitudes on neighbouring sites (site, site + 1).
struct Swap {
  std::size_t site = 0;
};

/// Two-site mixing gate on (site, site + 1):
///
///   [ cos(theta)   e^{i phi} sin(theta) ]
///   [ sin(theta)  -e^{i phi} cos(theta) ]
///
/// At theta = pi/4 this is the butterfly (1/sqrt 2)[[1, w], [1, -w]] with
/// w = e^{i phi}.
struct Mix {
  std::size_t site = 0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Single-site phase e^{i lambda}.
struct Phase {
  std::size_t site = 0;
  double lambda = 0.0;
};

/// One strictly-local gate together with the Hamiltonian step it belongs to.
/// Gates sharing a step act on disjoint sites and are executed in parallel
/// by a single Hamiltonian H_p^[s].
struct GateSpec {
  std::variant<Swap, Mix, Phase> op;
  std::size_t step = 0;

  std::size_t first_site() const;
  /// Number of sites touched (1 or 2, always adjacent).
  std::size_t arity() const;
  /// Local matrix on (first_site, first_site + arity - 1).
  Matrix local_matrix() const;
  std::string_view kind_name() const;
};

struct InvalidSequenceError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Ordered gate list; element 0 is applied first. Steps are numbered
/// 0, 1, ..., depth - 1 without gaps and are non-decreasing along the list.
class CircuitSequence {
 public:
  CircuitSequence() = default;
  CircuitSequence(std::size_t n_sites, std::vector<GateSpec> gates);

  std::size_t n_sites() const { return n_sites_; }
  std::span<const GateSpec> gates() const { return gates_; }

  /// Hamiltonian-step depth D (number of distinct steps).
  std::size_t depth() const;
  std::size_t gate_count() const { return gates_.size(); }

  /// Throws InvalidSequenceError on locality, range, ordering, or step
  /// disjointness violations.
  void validate() const;

 private:
  std::size_t n_sites_ = 0;
  std::vector<GateSpec> gates_;
};

/// Binary digits of an index, bits[i] = k_i (least significant first).
struct BitDecomposition {
  std::size_t index = 0;
  std::vector<int> bits;

  static BitDecomposition of(std::size_t index, unsigned n_bits);
  std::size_t reconstruct() const;
};

/// Closed-form Hamiltonian-step depth (n + 2) 2^{n-1} - n - 1 for N = 2^n.
std::uint64_t depth_formula(unsigned n);

/// The equivalent per-stage sum (2^{n-1} - 1) n + 2^n - 1.
std::uint64_t depth_formula_stagewise(unsigned n);

/// Swap network realizing the re-ordering permutation R^[p] on N = 2^n sites,
/// which rotates the low p + 1 bits of a site index right by one:
/// k_p = j_0, k_{p-1} = j_p, ..., k_0 = j_1. Each parallel swap layer is its
/// own step, numbered from 0. p = 0 is the identity (empty list).
std::vector<GateSpec> reorder_permutation(unsigned p, unsigned n);

/// Permutation matrix R^[p] built directly from its bit definition.
std::size_t reorder_target(std::size_t j, unsigned p);

/// Analytic local QQFT for N = 2^n. Stage q (q = 0 .. n-1) emits the inverse
/// full re-ordering, one layer of butterflies on pairs (2r, 2r + 1), and the
/// re-ordering R^[q]. The composed unitary equals the DFT matrix exactly and
/// depth() == depth_formula(n).
CircuitSequence build_radix2_qqft(unsigned n);

/// Nearest-neighbour Givens elimination for any N >= 2. Every Mix gate is its
/// own step and a final step applies N site phases, so
/// depth() = N (N - 1) / 2 + 1 <= N^2.
CircuitSequence build_generic_qqft(std::size_t n_sites);

/// Radix-2 construction when N is a power of two, Givens fallback otherwise.
CircuitSequence build_qqft(std::size_t n_sites);

bool is_power_of_two(std::size_t n);

/// Dense product of all gates in application order.
Matrix sequence_to_unitary(const CircuitSequence& seq);

/// Left-multiply `target` by the local matrix `gate` acting on rows
/// (site, site + gate.rows() - 1).
void apply_local(Matrix& target, const Matrix& gate, std::size_t site);

}  // namespace qqft
