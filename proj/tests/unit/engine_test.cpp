#include "qqft/engine.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qqft/noise.hpp"

using namespace qqft;

TEST(Generator, RoundTripAllGateKinds) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-4.0, 4.0);
  std::vector<GateSpec> gates{GateSpec{Swap{0}, 0}, GateSpec{Phase{0, kPi}, 0},
                              GateSpec{Phase{0, -kPi}, 0}, GateSpec{Mix{0, kPi / 4, 0.0}, 0}};
  for (int i = 0; i < 50; ++i) {
    gates.push_back(GateSpec{Mix{0, angle(rng), angle(rng)}, 0});
    gates.push_back(GateSpec{Phase{0, angle(rng)}, 0});
  }
  for (const GateSpec& g : gates) {
    const LocalGenerator lg = gate_to_generator(g);
    EXPECT_LT(hermiticity_defect(lg.generator.matrix()), 1e-12);
    EXPECT_LT(max_abs_diff(lg.generator.exponentiate(), g.local_matrix()), 1e-12) << g.kind_name();
    for (Eigen::Index i = 0; i < lg.generator.eigenvalues().size(); ++i) {
      EXPECT_GT(lg.generator.eigenvalues()(i), -kPi);
      EXPECT_LE(lg.generator.eigenvalues()(i), kPi);
    }
  }
}

TEST(Generator, SwapSitsOnUpperBranch) {
  const auto lg = gate_to_generator(GateSpec{Swap{0}, 0});
  EXPECT_NEAR(lg.generator.eigenvalues().maxCoeff(), kPi, 1e-12);
  EXPECT_NEAR(lg.generator.eigenvalues().minCoeff(), 0.0, 1e-12);
}

TEST(Generator, MatchesPauliExponential) {
  const double a = 0.83;
  const Matrix u = oracle::pauli_x_exponential(a, 1.0);
  const auto gen = HermitianGenerator::from_unitary(u);
  for (double s : {0.0, 0.5, 1.0, 1.37, -2.0}) {
    EXPECT_LT(oracle::max_diff(gen.exponentiate(s), oracle::pauli_x_exponential(a, s)), 1e-12);
  }
  Matrix h(2, 2);
  h << 0.0, a, a, 0.0;
  EXPECT_LT(oracle::max_diff(evolve_block(h, 1.7), oracle::pauli_x_exponential(a, 1.7)), 1e-12);
}

TEST(Generator, RejectsNonUnitary) {
  Matrix m(2, 2);
  m << 1.0, 0.1, 0.0, 1.0;
  EXPECT_THROW(HermitianGenerator::from_unitary(m), NotUnitaryError);
}

TEST(CompiledSequence, NoiselessIsBitIdenticalToExactProduct) {
  for (std::size_t n : {8, 16, 6}) {
    const CircuitSequence seq = build_qqft(n);
    const CompiledSequence compiled(seq);
    const Matrix exact = sequence_to_unitary(seq);
    EXPECT_EQ(max_abs_diff(compiled.apply(NoiseModel::none()), exact), 0.0);
    EXPECT_LT(max_abs_diff(compiled.apply(NoiseModel::none(), 0, Direction::kAdjoint),
                           exact.adjoint()),
              1e-14);
  }
}

TEST(CompiledSequence, NoisyProductsStayUnitary) {
  for (std::size_t n : {8, 32, 6, 33}) {
    const CompiledSequence compiled(build_qqft(n));
    for (double sigma : {1e-3, 3e-2, 0.3}) {
      for (std::uint64_t stream = 0; stream < 4; ++stream) {
        const NoiseModel noise{sigma, 5, stream};
        EXPECT_LT(unitarity_defect(compiled.apply(noise, 0)), 1e-10);
        EXPECT_LT(unitarity_defect(compiled.apply(noise, 1, Direction::kAdjoint)), 1e-10);
      }
    }
  }
}

TEST(CompiledSequence, SameNoiseInverseUndoesForward) {
  const CompiledSequence compiled(build_qqft(16));
  const NoiseModel noise{2e-2, 9, 3};
  const Matrix f = compiled.apply(noise, 4, Direction::kForward);
  const Matrix b = compiled.apply(noise, 4, Direction::kAdjoint);
  EXPECT_LT(max_abs_diff(b * f, Matrix::Identity(16, 16)), 1e-12);
}

TEST(CompiledSequence, NoiseMovesTheUnitary) {
  const CompiledSequence compiled(build_qqft(8));
  const Matrix clean = compiled.apply(NoiseModel::none());
  const double small = max_abs_diff(compiled.apply(NoiseModel{1e-3, 1, 0}), clean);
  const double large = max_abs_diff(compiled.apply(NoiseModel{1e-2, 1, 0}), clean);
  EXPECT_GT(small, 0.0);
  EXPECT_GT(large, small);
}

TEST(Noise, DeterministicAndKeyed) {
  const NoiseModel a{0.1, 42, 7};
  EXPECT_EQ(a.delta(3, 11), a.delta(3, 11));
  EXPECT_NE(a.delta(3, 11), a.delta(3, 12));
  EXPECT_NE(a.delta(3, 11), a.delta(4, 11));
  EXPECT_NE(a.delta(3, 11), a.with_stream(8).delta(3, 11));
  EXPECT_NE(a.delta(3, 11), (NoiseModel{0.1, 43, 7}.delta(3, 11)));
  EXPECT_EQ(NoiseModel::none().delta(0, 0), 0.0);
  EXPECT_THROW((NoiseModel{-1.0, 0, 0}.delta(0, 0)), std::invalid_argument);
}

TEST(Noise, SigmaScalesSharedVariates) {
  const NoiseModel a{1e-3, 5, 2};
  const NoiseModel b{4e-3, 5, 2};
  for (std::uint64_t s = 0; s < 20; ++s) EXPECT_NEAR(b.delta(1, s), 4.0 * a.delta(1, s), 1e-18);
}

TEST(Noise, StandardNormalMoments) {
  const int count = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < count; ++i) {
    const double z = keyed_standard_normal(1, 2, 3, static_cast<std::uint64_t>(i));
    sum += z;
    sq += z * z;
  }
  const double mean = sum / count;
  EXPECT_NEAR(mean, 0.0, 0.015);
  EXPECT_NEAR(sq / count - mean * mean, 1.0, 0.015);
}
