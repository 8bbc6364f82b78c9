#include "qqft/haldane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "qqft/parallel.hpp"

namespace qqft {
namespace {

double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

Vec2 sub(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

MeanStderr mean_stderr(const std::vector<double>& xs) {
  MeanStderr out;
  if (xs.empty()) return out;
  out.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  if (xs.size() < 2) return out;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.stderr_ = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  return out;
}

}  // namespace

std::array<Vec2, 3> honeycomb_neighbours() {
  const double s = std::sqrt(3.0) / 2.0;
  return {Vec2{0.0, 1.0}, Vec2{-s, -0.5}, Vec2{s, -0.5}};
}

std::array<Vec2, 3> honeycomb_lattice_vectors() {
  const auto e = honeycomb_neighbours();
  return {sub(e[1], e[2]), sub(e[2], e[0]), sub(e[0], e[1])};
}

Vec2 grid_momentum(std::size_t m1, std::size_t m2, std::size_t grid) {
  const auto g = honeycomb_lattice_vectors();
  // Solve [g2; g3] k = 2 pi (m1, m2) / N.
  const double a = g[1][0], b = g[1][1], c = g[2][0], d = g[2][1];
  const double det = a * d - b * c;
  const double r1 = kTwoPi * static_cast<double>(m1) / static_cast<double>(grid);
  const double r2 = kTwoPi * static_cast<double>(m2) / static_cast<double>(grid);
  return {(d * r1 - b * r2) / det, (-c * r1 + a * r2) / det};
}

Vec2 dirac_point() {
  const auto g = honeycomb_lattice_vectors();
  const double a = g[1][0], b = g[1][1], c = g[2][0], d = g[2][1];
  const double det = a * d - b * c;
  const double r = kTwoPi / 3.0;
  return {(d * r - b * r) / det, (-c * r + a * r) / det};
}

DVector d_vector(const Vec2& k, const HaldaneParams& p) {
  const auto g = honeycomb_lattice_vectors();
  const double k1 = dot(k, g[0]);
  const double k2 = dot(k, g[1]);
  const double k3 = dot(k, g[2]);
  DVector out;
  out.d[0] = p.t1 * (1.0 + std::cos(k2) + std::cos(k3));
  out.d[1] = p.t1 * (std::sin(k2) - std::sin(k3));
  out.d[2] = p.mass - 2.0 * p.t2 * std::sin(p.phi) * (std::sin(k1) + std::sin(k2) + std::sin(k3));
  out.d0 = p.d0;
  return out;
}

Vec3 flatten(const Vec3& d, double target_norm) {
  const double norm = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
  if (norm == 0.0) {
    throw SingularPointError("flatten: |d| = 0, the gap closes at this momentum");
  }
  const double scale = target_norm / norm;
  return {d[0] * scale, d[1] * scale, d[2] * scale};
}

Matrix bloch_matrix(const DVector& v) {
  const auto& d = v.d;
  Matrix h(2, 2);
  h << Complex{v.d0 + d[2], 0.0}, Complex{d[0], -d[1]}, Complex{d[0], d[1]},
      Complex{v.d0 - d[2], 0.0};
  return h;
}

MomentumModel haldane_model(const HaldaneParams& p, std::size_t grid, double time, bool flat) {
  MomentumModel model;
  model.dimension = 2;
  model.orbitals = 2;
  model.grid = grid;
  model.time = time;
  model.sampler = [p, grid, flat](std::span<const std::size_t> cell) {
    DVector v = d_vector(grid_momentum(cell[0], cell[1], grid), p);
    if (flat) v.d = flatten(v.d, p.target_norm);
    return bloch_matrix(v);
  };
  return model;
}

int chern_analytic(const HaldaneParams& p) {
  const double shift = 3.0 * std::sqrt(3.0) * p.t2 * std::sin(p.phi);
  const double plus = p.mass + shift;
  const double minus = p.mass - shift;
  if (std::abs(plus) < 1e-12 || std::abs(minus) < 1e-12) {
    throw PhaseBoundaryError("chern_analytic: parameters lie on a phase boundary");
  }
  return -(sgn(plus) - sgn(minus)) / 2;
}

double chern_fhs_raw(const MomentumModel& model) {
  model.validate_shape();
  if (model.dimension != 2) throw std::invalid_argument("chern_fhs: model must be two-dimensional");
  const std::size_t n = model.grid;
  std::vector<Vector> states(n * n);
  for (std::size_t cell = 0; cell < n * n; ++cell) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(model.block(cell));
    if (model.orbitals > 1 && solver.eigenvalues()(1) - solver.eigenvalues()(0) < 1e-10) {
      throw GapClosedError("chern_fhs: lowest band touches the next one at cell " +
                           std::to_string(cell));
    }
    states[cell] = solver.eigenvectors().col(0);
  }
  auto at = [&](std::size_t a, std::size_t b) -> const Vector& {
    return states[(a % n) * n + (b % n)];
  };
  auto link = [](const Vector& u, const Vector& v) {
    const Complex overlap = u.dot(v);  // <u|v>
    return overlap / std::abs(overlap);
  };
  double flux = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Complex plaquette = link(at(a, b), at(a + 1, b)) * link(at(a + 1, b), at(a + 1, b + 1)) *
                                link(at(a + 1, b + 1), at(a, b + 1)) * link(at(a, b + 1), at(a, b));
      flux += std::arg(plaquette);
    }
  }
  return flux / kTwoPi;
}

int chern_fhs(const MomentumModel& model) {
  return static_cast<int>(std::lround(chern_fhs_raw(model)));
}

BottResult bott_index(const Matrix& u, double time, int orbitals, std::size_t grid) {
  if (orbitals < 1 || static_cast<std::size_t>(u.rows()) != grid * grid * static_cast<std::size_t>(orbitals)) {
    throw DimensionError("bott_index: unitary does not match a grid x grid x orbitals layout");
  }
  if (!(time > 0.0)) throw std::invalid_argument("bott_index: time must be positive");
  const Eigen::Index dim = u.rows();
  const Eigen::Index filling = dim / orbitals;

  UnitaryEigensystem eig;
  try {
    eig = unitary_eigensystem(u, true);
  } catch (const WrappedPhaseError& e) {
    throw InvalidEvolutionTimeError(std::string("bott_index: ") + e.what());
  }
  // Phases ascend, so energies -phase / T descend: the lowest `filling`
  // energies are the last `filling` columns.
  const RealVector& phase = eig.phases;
  BottResult out;
  const double e_lower_max = -phase(dim - filling) / time;
  const double e_upper_min = -phase(dim - filling - 1) / time;
  out.gap = e_upper_min - e_lower_max;
  out.mean_level_spacing = (phase(dim - 1) - phase(0)) / time / static_cast<double>(dim - 1);
  if (!(out.gap > out.mean_level_spacing)) {
    throw GapClosedError("bott_index: no spectral gap at the filling (gap " +
                         std::to_string(out.gap) + ", mean spacing " +
                         std::to_string(out.mean_level_spacing) + ")");
  }
  const Matrix occupied = eig.vectors.rightCols(filling);

  Vector phase_x(dim);
  Vector phase_y(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const std::size_t cell = static_cast<std::size_t>(i) / static_cast<std::size_t>(orbitals);
    const double x = static_cast<double>(cell / grid);
    const double y = static_cast<double>(cell % grid);
    phase_x(i) = std::polar(1.0, kTwoPi * x / static_cast<double>(grid));
    phase_y(i) = std::polar(1.0, kTwoPi * y / static_cast<double>(grid));
  }
  const Matrix vx = occupied.adjoint() * (phase_x.asDiagonal() * occupied);
  const Matrix vy = occupied.adjoint() * (phase_y.asDiagonal() * occupied);
  const Matrix loop = vx * vy * vx.adjoint() * vy.adjoint();

  Eigen::ComplexEigenSolver<Matrix> solver(loop, false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("bott_index: eigensolver failed");
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const Complex lambda = solver.eigenvalues()(i);
    if (std::abs(lambda) < 1e-8) {
      throw GapClosedError("bott_index: projected position operators are singular");
    }
    total += std::arg(lambda);
  }
  out.value = total / kTwoPi;
  return out;
}

std::vector<GapWidthRow> noise_sweep_gap_width(const HaldaneParams& p,
                                               const std::vector<double>& sigmas,
                                               std::size_t realizations, std::uint64_t seed,
                                               const SweepOptions& options) {
  if (realizations == 0) throw std::invalid_argument("noise_sweep_gap_width: need realizations");
  const EngineeredEvolution evolution(haldane_model(p, options.grid, options.time, true),
                                      options.protocol);
  const std::size_t total = sigmas.size() * realizations;
  std::vector<double> gaps(total);
  std::vector<double> widths(total);
  parallel_for(total, options.workers, [&](std::size_t task) {
    const std::size_t s = task / realizations;
    const std::size_t r = task % realizations;
    const Matrix u = evolution.unitary(NoiseModel{sigmas[s], seed, r});
    const SpectrumResult spectrum = extract_spectrum(u, options.time, 2);
    gaps[task] = spectrum.band_gap;
    widths[task] = spectrum.band_width;
  });

  std::vector<GapWidthRow> rows;
  for (std::size_t s = 0; s < sigmas.size(); ++s) {
    const auto begin = static_cast<std::ptrdiff_t>(s * realizations);
    const auto end = begin + static_cast<std::ptrdiff_t>(realizations);
    const std::vector<double> g(gaps.begin() + begin, gaps.begin() + end);
    const std::vector<double> w(widths.begin() + begin, widths.begin() + end);
    std::vector<double> ratio(realizations);
    for (std::size_t i = 0; i < realizations; ++i) ratio[i] = w[i] / g[i];
    const auto mg = mean_stderr(g);
    const auto mw = mean_stderr(w);
    const auto mr = mean_stderr(ratio);
    rows.push_back(GapWidthRow{sigmas[s], mg.mean, mw.mean, mg.stderr_, mw.stderr_, mr.mean,
                               mr.stderr_, realizations});
  }
  return rows;
}

std::vector<PhaseDiagramCell> phase_diagram(const HaldaneParams& base,
                                            const PhaseDiagramOptions& options,
                                            std::uint64_t seed) {
  if (options.phi_cells == 0 || options.mass_cells == 0 || options.realizations == 0) {
    throw std::invalid_argument("phase_diagram: grid and realization counts must be positive");
  }
  const std::size_t n_cells = options.phi_cells * options.mass_cells;
  std::vector<PhaseDiagramCell> cells(n_cells);
  for (std::size_t i = 0; i < options.phi_cells; ++i) {
    for (std::size_t j = 0; j < options.mass_cells; ++j) {
      PhaseDiagramCell& cell = cells[i * options.mass_cells + j];
      cell.phi = options.phi_min + (static_cast<double>(i) + 0.5) *
                                       (options.phi_max - options.phi_min) /
                                       static_cast<double>(options.phi_cells);
      cell.mass = options.mass_min + (static_cast<double>(j) + 0.5) *
                                         (options.mass_max - options.mass_min) /
                                         static_cast<double>(options.mass_cells);
    }
  }

  const std::size_t total = n_cells * options.realizations;
  std::vector<double> values(total, std::numeric_limits<double>::quiet_NaN());
  parallel_for(total, options.sweep.workers, [&](std::size_t task) {
    const std::size_t c = task / options.realizations;
    const std::size_t r = task % options.realizations;
    HaldaneParams p = base;
    p.phi = cells[c].phi;
    p.mass = cells[c].mass;
    MomentumModel model;
    try {
      model = haldane_model(p, options.sweep.grid, options.sweep.time, true);
      const EngineeredEvolution evolution(model, options.sweep.protocol);
      const Matrix u = evolution.unitary(NoiseModel{options.sigma, seed, r});
      values[task] = bott_index(u, options.sweep.time, 2, options.sweep.grid).value;
    } catch (const GapClosedError&) {
    } catch (const SingularPointError&) {
    }
  });

  for (std::size_t c = 0; c < n_cells; ++c) {
    HaldaneParams p = base;
    p.phi = cells[c].phi;
    p.mass = cells[c].mass;
    try {
      cells[c].chern = chern_analytic(p);
    } catch (const PhaseBoundaryError&) {
      cells[c].chern.reset();
    }
    double sum = 0.0;
    std::size_t valid = 0;
    for (std::size_t r = 0; r < options.realizations; ++r) {
      const double v = values[c * options.realizations + r];
      if (std::isnan(v)) {
        ++cells[c].gap_closed;
      } else {
        sum += v;
        ++valid;
      }
    }
    cells[c].bott = valid ? sum / static_cast<double>(valid) : std::numeric_limits<double>::quiet_NaN();
  }
  return cells;
}

}  // namespace qqft
