#include "qqft/haldane.hpp"

#include <cmath>

#include <gtest/gtest.h>

using namespace qqft;

namespace {

double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

HaldaneParams at(double mass, double phi) {
  HaldaneParams p;
  p.mass = mass;
  p.phi = phi;
  return p;
}

}  // namespace

TEST(Honeycomb, Geometry) {
  const auto e = honeycomb_neighbours();
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(dot(e[i], e[i]), 1.0, 1e-15);
    EXPECT_NEAR(dot(e[i], e[(i + 1) % 3]), -0.5, 1e-15);
  }
  const auto g = honeycomb_lattice_vectors();
  EXPECT_NEAR(g[0][0] + g[1][0] + g[2][0], 0.0, 1e-15);
  EXPECT_NEAR(g[0][1] + g[1][1] + g[2][1], 0.0, 1e-15);
}

TEST(Honeycomb, GridMomentumSolvesProjections) {
  const auto g = honeycomb_lattice_vectors();
  for (std::size_t m1 : {0, 3, 7})
    for (std::size_t m2 : {1, 5}) {
      const Vec2 k = grid_momentum(m1, m2, 8);
      EXPECT_NEAR(dot(k, g[1]), kTwoPi * m1 / 8.0, 1e-12);
      EXPECT_NEAR(dot(k, g[2]), kTwoPi * m2 / 8.0, 1e-12);
    }
}

TEST(Honeycomb, DiracPointClosesGraphenePart) {
  const DVector d = d_vector(dirac_point(), at(0.0, 0.0));
  EXPECT_NEAR(d.d[0], 0.0, 1e-12);
  EXPECT_NEAR(d.d[1], 0.0, 1e-12);
  EXPECT_NEAR(d.d[2], 0.0, 1e-12);
  // sum_j sin(K . g_j) = 3 sqrt(3) / 2 at this corner, so d3 = M - 3 sin(phi).
  const DVector h = d_vector(dirac_point(), at(0.4, -kPi / 2));
  EXPECT_NEAR(h.d[2], 0.4 + 3.0, 1e-12);
}

TEST(Honeycomb, FlattenAndBlochMatrix) {
  const Vec3 f = flatten({3.0, 0.0, 4.0}, kTwoPi);
  EXPECT_NEAR(f[0], 0.6 * kTwoPi, 1e-14);
  EXPECT_NEAR(f[2], 0.8 * kTwoPi, 1e-14);
  EXPECT_THROW(flatten({0.0, 0.0, 0.0}, 1.0), SingularPointError);
  const Matrix h = bloch_matrix(DVector{{1.0, 2.0, 3.0}, 0.5});
  EXPECT_EQ(h(0, 0), Complex(3.5));
  EXPECT_EQ(h(0, 1), Complex(1.0, -2.0));
  EXPECT_EQ(h(1, 0), Complex(1.0, 2.0));
  EXPECT_EQ(h(1, 1), Complex(-2.5));
}

TEST(Chern, AnalyticValues) {
  EXPECT_EQ(chern_analytic(at(0.0, -kPi / 2)), 1);
  EXPECT_EQ(chern_analytic(at(0.0, kPi / 2)), -1);
  EXPECT_EQ(chern_analytic(at(3.5, kPi / 2)), 0);
  EXPECT_EQ(chern_analytic(at(-3.5, -kPi / 2)), 0);
  EXPECT_THROW(chern_analytic(at(3.0, kPi / 2)), PhaseBoundaryError);
  EXPECT_THROW(chern_analytic(at(0.0, 0.0)), PhaseBoundaryError);
}

TEST(Chern, LatticeFieldStrengthAgreesWithAnalytic) {
  const std::vector<std::pair<double, double>> points{
      {0.0, -kPi / 2}, {0.0, kPi / 2},  {1.5, -kPi / 2}, {-1.5, kPi / 2},
      {2.0, -1.0},     {-2.0, 2.0},     {0.5, 0.4},      {3.6, -kPi / 2},
      {-3.6, kPi / 2}, {1.0, -2.8},     {-1.0, 2.8},     {0.2, -0.2}};
  for (const auto& [mass, phi] : points) {
    const HaldaneParams p = at(mass, phi);
    EXPECT_EQ(chern_fhs(haldane_model(p, 24)), chern_analytic(p)) << "M=" << mass << " phi=" << phi;
  }
}

TEST(Bott, CleanLobesMatchChern) {
  for (const auto& [mass, phi] : std::vector<std::pair<double, double>>{
           {0.0, -kPi / 2}, {0.0, kPi / 2}, {3.5, -kPi / 2}, {-1.0, 1.2}}) {
    const HaldaneParams p = at(mass, phi);
    const EngineeredEvolution evo(haldane_model(p, 8));
    const BottResult b = bott_index(evo.unitary(NoiseModel::none()), evo.model().time, 2, 8);
    EXPECT_NEAR(b.value, chern_analytic(p), 1e-8) << "M=" << mass << " phi=" << phi;
    EXPECT_GT(b.gap, b.mean_level_spacing);
  }
}

TEST(Bott, RefusesWithoutGap) {
  EXPECT_THROW(bott_index(Matrix::Identity(32, 32), 1.0, 2, 4), GapClosedError);
  EXPECT_THROW(bott_index(Matrix::Identity(30, 30), 1.0, 2, 4), DimensionError);
}

TEST(Sweep, NoiselessRowIsFlat) {
  SweepOptions o;
  o.grid = 4;
  const auto rows = noise_sweep_gap_width(HaldaneParams{}, {0.0, 1e-2}, 3, 1, o);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_LT(rows[0].mean_width, 1e-9);
  EXPECT_NEAR(rows[0].mean_gap, 2.0 * kTwoPi, 1e-9);
  EXPECT_GT(rows[1].mean_width, rows[0].mean_width);
  EXPECT_LT(rows[1].mean_gap, rows[0].mean_gap);
}

TEST(Sweep, WorkerCountDoesNotChangeResults) {
  SweepOptions one, three;
  one.grid = three.grid = 4;
  three.workers = 3;
  const auto a = noise_sweep_gap_width(HaldaneParams{}, {5e-3, 2e-2}, 5, 9, one);
  const auto b = noise_sweep_gap_width(HaldaneParams{}, {5e-3, 2e-2}, 5, 9, three);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].mean_gap, b[i].mean_gap);
    EXPECT_EQ(a[i].mean_width, b[i].mean_width);
    EXPECT_EQ(a[i].stderr_ratio, b[i].stderr_ratio);
  }
}

TEST(PhaseDiagram, SmallGrid) {
  PhaseDiagramOptions o;
  o.phi_cells = 2;
  o.mass_cells = 3;
  o.sigma = 0.0;
  o.sweep.grid = 6;
  const auto cells = phase_diagram(HaldaneParams{}, o, 1);
  ASSERT_EQ(cells.size(), 6u);
  EXPECT_NEAR(cells[0].phi, -kPi / 2, 1e-12);
  EXPECT_NEAR(cells[1].mass, 0.0, 1e-12);
  for (const auto& c : cells) {
    ASSERT_TRUE(c.chern.has_value());
    if (c.gap_closed == 0) EXPECT_NEAR(c.bott, *c.chern, 1e-8) << c.phi << ' ' << c.mass;
  }
}
