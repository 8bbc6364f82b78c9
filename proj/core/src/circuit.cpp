#include "qqft/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

namespace qqft {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t pow2(unsigned e) { return std::size_t{1} << e; }

// Angle 2 pi e / N with e reduced mod N first.
double root_of_unity_angle(std::uint64_t e, std::size_t n) {
  return kTwoPi * static_cast<double>(e % n) / static_cast<double>(n);
}

std::vector<GateSpec> reversed_layers(std::vector<GateSpec> gates) {
  if (gates.empty()) return gates;
  const std::size_t last = gates.back().step;
  std::reverse(gates.begin(), gates.end());
  for (auto& g : gates) g.step = last - g.step;
  return gates;
}

void append_shifted(std::vector<GateSpec>& out, const std::vector<GateSpec>& part,
                    std::size_t& next_step) {
  if (part.empty()) return;
  for (GateSpec g : part) {
    g.step += next_step;
    out.push_back(g);
  }
  next_step += part.back().step + 1;
}

}  // namespace

std::size_t GateSpec::first_site() const {
  return std::visit([](const auto& g) { return g.site; }, op);
}

std::size_t GateSpec::arity() const {
  return std::holds_alternative<Phase>(op) ? 1 : 2;
}

std::string_view GateSpec::kind_name() const {
  return std::visit(Overloaded{[](const Swap&) { return std::string_view{"swap"}; },
                               [](const Mix&) { return std::string_view{"mix"}; },
                               [](const Phase&) { return std::string_view{"phase"}; }},
                    op);
}

Matrix GateSpec::local_matrix() const {
  return std::visit(
      Overloaded{[](const Swap&) {
                   Matrix m(2, 2);
                   m << 0.0, 1.0, 1.0, 0.0;
                   return m;
                 },
                 [](const Mix& g) {
                   const double c = std::cos(g.theta);
                   const double s = std::sin(g.theta);
                   const Complex w = std::polar(1.0, g.phi);
                   Matrix m(2, 2);
                   m << c, w * s, s, -w * c;
                   return m;
                 },
                 [](const Phase& g) {
                   Matrix m(1, 1);
                   m(0, 0) = std::polar(1.0, g.lambda);
                   return m;
                 }},
      op);
}

CircuitSequence::CircuitSequence(std::size_t n_sites, std::vector<GateSpec> gates)
    : n_sites_(n_sites), gates_(std::move(gates)) {}

std::size_t CircuitSequence::depth() const {
  return gates_.empty() ? 0 : gates_.back().step + 1;
}

void CircuitSequence::validate() const {
  if (n_sites_ == 0) throw InvalidSequenceError("sequence has zero sites");
  std::vector<std::size_t> last_use(n_sites_, SIZE_MAX);
  std::size_t expected_step = 0;
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const GateSpec& g = gates_[i];
    const std::string where = "gate " + std::to_string(i) + ": ";
    if (g.first_site() + g.arity() > n_sites_) {
      throw InvalidSequenceError(where + "site " + std::to_string(g.first_site()) +
                                 " out of range for " + std::to_string(n_sites_) + " sites");
    }
    if (i == 0 ? g.step != 0 : (g.step != expected_step && g.step != expected_step + 1)) {
      throw InvalidSequenceError(where + "steps must start at 0 and increase by at most 1");
    }
    expected_step = g.step;
    for (std::size_t s = g.first_site(); s < g.first_site() + g.arity(); ++s) {
      if (last_use[s] == g.step) {
        throw InvalidSequenceError(where + "overlaps another gate in step " +
                                   std::to_string(g.step));
      }
      last_use[s] = g.step;
    }
    if (const auto* m = std::get_if<Mix>(&g.op)) {
      if (!std::isfinite(m->theta) || !std::isfinite(m->phi)) {
        throw InvalidSequenceError(where + "non-finite mix angle");
      }
    } else if (const auto* p = std::get_if<Phase>(&g.op)) {
      if (!std::isfinite(p->lambda)) throw InvalidSequenceError(where + "non-finite phase");
    }
  }
}

BitDecomposition BitDecomposition::of(std::size_t index, unsigned n_bits) {
  if (n_bits < 64 && index >= pow2(n_bits)) {
    throw std::out_of_range("BitDecomposition: index does not fit in the bit width");
  }
  BitDecomposition out{index, std::vector<int>(n_bits)};
  for (unsigned i = 0; i < n_bits; ++i) out.bits[i] = static_cast<int>((index >> i) & 1U);
  return out;
}

std::size_t BitDecomposition::reconstruct() const {
  std::size_t value = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) value += static_cast<std::size_t>(bits[i]) << i;
  return value;
}

std::uint64_t depth_formula(unsigned n) {
  if (n == 0 || n > 62) throw std::invalid_argument("depth_formula: n must be in [1, 62]");
  return (static_cast<std::uint64_t>(n) + 2) * (std::uint64_t{1} << (n - 1)) - n - 1;
}

std::uint64_t depth_formula_stagewise(unsigned n) {
  if (n == 0 || n > 62) {
    throw std::invalid_argument("depth_formula_stagewise: n must be in [1, 62]");
  }
  return ((std::uint64_t{1} << (n - 1)) - 1) * n + (std::uint64_t{1} << n) - 1;
}

std::size_t reorder_target(std::size_t j, unsigned p) {
  const std::size_t low_mask = (std::size_t{1} << (p + 1)) - 1;
  const std::size_t low = j & low_mask;
  const std::size_t rotated = (low >> 1) | ((low & 1U) << p);
  return (j & ~low_mask) | rotated;
}

std::vector<GateSpec> reorder_permutation(unsigned p, unsigned n) {
  if (n == 0 || p >= n) {
    throw std::out_of_range("reorder_permutation: require 0 <= p <= n - 1");
  }
  // R^[p] = prod_gamma S^[b+2^p-1, b+2^p] ... S^[b+1, b+2^{p+1}-2], b = 2^{p+1} gamma.
  // The rightmost (widest) composite swap acts first. Composite swaps for
  // different blocks gamma touch disjoint sites and share a step.
  const std::size_t block = pow2(p + 1);
  const std::size_t half = pow2(p);
  const std::size_t n_blocks = pow2(n - p - 1);
  std::vector<GateSpec> gates;
  for (std::size_t layer = 0; layer + 1 < half; ++layer) {
    for (std::size_t gamma = 0; gamma < n_blocks; ++gamma) {
      const std::size_t base = block * gamma;
      const std::size_t first = base + 1 + layer;
      const std::size_t last = base + block - 2 - layer;
      for (std::size_t site = first; site < last; site += 2) {
        gates.push_back(GateSpec{Swap{site}, layer});
      }
    }
  }
  return gates;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

CircuitSequence build_radix2_qqft(unsigned n) {
  if (n == 0 || n > 20) throw std::invalid_argument("build_radix2_qqft: n must be in [1, 20]");
  const std::size_t n_sites = pow2(n);
  const std::vector<GateSpec> full_reorder_inverse = reversed_layers(reorder_permutation(n - 1, n));

  std::vector<GateSpec> gates;
  std::size_t next_step = 0;
  for (unsigned q = 0; q < n; ++q) {
    append_shifted(gates, full_reorder_inverse, next_step);

    // Butterfly layer A^[q]: pair r = (2r, 2r + 1) carries the relative phase
    // omega^(2^{n-2} j_q + 2^{n-3} j_{q-1} + ... + 2^{n-q-1} j_1), where j_i
    // are the bits of the pair's lower site index 2r.
    for (std::size_t r = 0; r < n_sites / 2; ++r) {
      const std::size_t j = 2 * r;
      std::uint64_t exponent = 0;
      for (unsigned i = 1; i <= q; ++i) {
        if ((j >> i) & 1U) exponent += std::uint64_t{1} << (n - 2 - q + i);
      }
      gates.push_back(
          GateSpec{Mix{j, kPi / 4.0, root_of_unity_angle(exponent, n_sites)}, next_step});
    }
    ++next_step;

    append_shifted(gates, reorder_permutation(q, n), next_step);
  }
  return CircuitSequence(n_sites, std::move(gates));
}

CircuitSequence build_generic_qqft(std::size_t n_sites) {
  if (n_sites < 2) throw std::invalid_argument("build_generic_qqft: N must be >= 2");
  if (n_sites > kMaxDimension) throw DimensionError("build_generic_qqft: N too large");

  // Reduce Omega^dagger to a diagonal D with nearest-neighbour rotations
  // G_m ... G_1 Omega^dagger = D, so Omega = D^dagger G_m ... G_1: apply the
  // rotations in elimination order, then the conjugate site phases.
  Matrix work = dft_matrix(n_sites).adjoint();
  std::vector<GateSpec> gates;
  std::size_t step = 0;
  for (std::size_t col = 0; col + 1 < n_sites; ++col) {
    for (std::size_t row = n_sites - 1; row > col; --row) {
      const Complex upper = work(static_cast<Eigen::Index>(row - 1), static_cast<Eigen::Index>(col));
      const Complex lower = work(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
      // Second row of the Mix block: sin(theta) a - e^{i phi} cos(theta) b = 0.
      const Mix mix{row - 1, std::atan2(std::abs(lower), std::abs(upper)),
                    std::arg(upper) - std::arg(lower)};
      GateSpec gate{mix, step++};
      apply_local(work, gate.local_matrix(), row - 1);
      work(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 0.0;
      gates.push_back(gate);
    }
  }
  for (std::size_t site = 0; site < n_sites; ++site) {
    const auto idx = static_cast<Eigen::Index>(site);
    gates.push_back(GateSpec{Phase{site, -std::arg(work(idx, idx))}, step});
  }
  return CircuitSequence(n_sites, std::move(gates));
}

CircuitSequence build_qqft(std::size_t n_sites) {
  if (is_power_of_two(n_sites) && n_sites >= 2) {
    unsigned n = 0;
    while ((std::size_t{1} << n) < n_sites) ++n;
    return build_radix2_qqft(n);
  }
  return build_generic_qqft(n_sites);
}

void apply_local(Matrix& target, const Matrix& gate, std::size_t site) {
  const auto row = static_cast<Eigen::Index>(site);
  if (row + gate.rows() > target.rows()) {
    throw DimensionError("apply_local: gate extends past the last site");
  }
  if (gate.rows() == 1) {
    target.row(row) *= gate(0, 0);
    return;
  }
  const Matrix block = target.middleRows(row, gate.rows());
  target.middleRows(row, gate.rows()).noalias() = gate * block;
}

Matrix sequence_to_unitary(const CircuitSequence& seq) {
  seq.validate();
  const auto n = static_cast<Eigen::Index>(seq.n_sites());
  Matrix u = Matrix::Identity(n, n);
  for (const GateSpec& g : seq.gates()) apply_local(u, g.local_matrix(), g.first_site());
  return u;
}

}  // namespace qqft
