#include "qqft/circuit.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace qqft;

namespace {

Matrix permutation_oracle(unsigned p, unsigned n) {
  const std::size_t size = std::size_t{1} << n;
  Matrix r = Matrix::Zero(size, size);
  for (std::size_t j = 0; j < size; ++j) r(oracle::bit_rotation(j, p), j) = 1.0;
  return r;
}

}  // namespace

TEST(Circuit, DepthFormulaValues) {
  EXPECT_EQ(depth_formula(1), 1u);
  EXPECT_EQ(depth_formula(2), 5u);
  EXPECT_EQ(depth_formula(5), 106u);
  for (unsigned n = 1; n <= 40; ++n) EXPECT_EQ(depth_formula(n), depth_formula_stagewise(n));
  EXPECT_THROW(depth_formula(0), std::invalid_argument);
}

TEST(Circuit, ReorderTargetMatchesBitRotation) {
  for (unsigned p = 0; p < 6; ++p)
    for (std::size_t j = 0; j < 256; ++j) EXPECT_EQ(reorder_target(j, p), oracle::bit_rotation(j, p));
}

TEST(Circuit, SwapNetworkRealizesReordering) {
  for (unsigned n = 1; n <= 6; ++n) {
    for (unsigned p = 0; p < n; ++p) {
      const CircuitSequence seq(std::size_t{1} << n, reorder_permutation(p, n));
      ASSERT_NO_THROW(seq.validate());
      EXPECT_EQ(max_abs_diff(sequence_to_unitary(seq), permutation_oracle(p, n)), 0.0)
          << "n=" << n << " p=" << p;
      EXPECT_EQ(seq.depth(), (std::size_t{1} << p) - 1);
    }
  }
  EXPECT_THROW(reorder_permutation(3, 3), std::out_of_range);
}

TEST(Circuit, Radix2EqualsDft) {
  for (unsigned n = 1; n <= 7; ++n) {
    const CircuitSequence seq = build_radix2_qqft(n);
    EXPECT_EQ(seq.depth(), depth_formula(n));
    EXPECT_LT(oracle::max_diff(sequence_to_unitary(seq), oracle::brute_dft(std::size_t{1} << n)),
              1e-10)
        << "n=" << n;
  }
}

TEST(Circuit, SmallestCaseIsOneButterfly) {
  const CircuitSequence seq = build_radix2_qqft(1);
  ASSERT_EQ(seq.gate_count(), 1u);
  Matrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  EXPECT_LT(max_abs_diff(seq.gates()[0].local_matrix(), h / std::sqrt(2.0)), 1e-15);
}

TEST(Circuit, GenericEqualsDft) {
  for (std::size_t n : {2, 3, 5, 6, 7, 12, 33}) {
    const CircuitSequence seq = build_generic_qqft(n);
    EXPECT_EQ(seq.depth(), n * (n - 1) / 2 + 1);
    EXPECT_LE(seq.depth(), n * n);
    EXPECT_LT(oracle::max_diff(sequence_to_unitary(seq), oracle::brute_dft(n)), 1e-10) << n;
  }
  EXPECT_THROW(build_generic_qqft(1), std::invalid_argument);
}

TEST(Circuit, DispatchBySize) {
  EXPECT_EQ(build_qqft(16).depth(), depth_formula(4));
  EXPECT_EQ(build_qqft(6).depth(), 16u);
  EXPECT_THROW(build_radix2_qqft(0), std::invalid_argument);
}

TEST(Circuit, ValidationRejectsMalformedSequences) {
  EXPECT_THROW(CircuitSequence(4, {GateSpec{Swap{3}, 0}}).validate(), InvalidSequenceError);
  EXPECT_THROW(CircuitSequence(4, {GateSpec{Swap{0}, 0}, GateSpec{Swap{1}, 0}}).validate(),
               InvalidSequenceError);
  EXPECT_THROW(CircuitSequence(4, {GateSpec{Swap{0}, 1}}).validate(), InvalidSequenceError);
  EXPECT_THROW(CircuitSequence(4, {GateSpec{Swap{0}, 0}, GateSpec{Swap{0}, 2}}).validate(),
               InvalidSequenceError);
  EXPECT_THROW(CircuitSequence(4, {GateSpec{Mix{0, NAN, 0.0}, 0}}).validate(),
               InvalidSequenceError);
  EXPECT_THROW(CircuitSequence(0, {}).validate(), InvalidSequenceError);
  EXPECT_NO_THROW(CircuitSequence(4, {GateSpec{Swap{0}, 0}, GateSpec{Swap{2}, 0},
                                      GateSpec{Phase{1, 0.3}, 1}})
                      .validate());
}

TEST(Circuit, StepsAreParallelLayers) {
  const CircuitSequence seq = build_radix2_qqft(5);
  std::vector<std::size_t> per_step(seq.depth(), 0);
  for (const GateSpec& g : seq.gates()) ++per_step[g.step];
  for (std::size_t c : per_step) EXPECT_GE(c, 1u);
}

TEST(Circuit, BitDecompositionRoundTrip) {
  for (std::size_t j = 0; j < 64; ++j) {
    const auto b = BitDecomposition::of(j, 6);
    EXPECT_EQ(b.reconstruct(), j);
  }
  EXPECT_EQ(BitDecomposition::of(6, 3).bits, (std::vector<int>{0, 1, 1}));
  EXPECT_THROW(BitDecomposition::of(8, 3), std::out_of_range);
}
