#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qqft/model.hpp"
#include "qqft/noise.hpp"
#include "qqft/protocol.hpp"

namespace qqft {

/// Haldane honeycomb parameters. t1 = 1 sets the (dimensionless) unit of the
/// mass M; the spectrum is rescaled to |d| = target_norm after flattening.
struct HaldaneParams {
  double t1 = 1.0;
  double t2 = 1.0 / std::sqrt(3.0);
  double phi = -kPi / 2.0;
  double mass = 0.0;
  /// |d| after flattening, rad/ms (2 pi x 1 kHz).
  double target_norm = kTwoPi;
  /// Uniform energy offset d0, rad/ms. Not touched by flattening.
  double d0 = 0.0;
};

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

struct DVector {
  Vec3 d{};
  double d0 = 0.0;
};

/// Unit vectors from a B site to its three A neighbours (120 degrees apart,
/// counter-clockwise) and the lattice vectors g1 = e2 - e3, g2 = e3 - e1,
/// g3 = e1 - e2.
std::array<Vec2, 3> honeycomb_neighbours();
std::array<Vec2, 3> honeycomb_lattice_vectors();

/// Momentum of grid cell (m1, m2): k . g2 = 2 pi m1 / N, k . g3 = 2 pi m2 / N.
Vec2 grid_momentum(std::size_t m1, std::size_t m2, std::size_t grid);

/// Brillouin-zone corner where the t1 part of d vanishes.
Vec2 dirac_point();

DVector d_vector(const Vec2& k, const HaldaneParams& p);

struct SingularPointError : std::domain_error {
  using std::domain_error::domain_error;
};

/// d * target_norm / |d|. Throws SingularPointError when |d| == 0.
Vec3 flatten(const Vec3& d, double target_norm);

/// 2 x 2 Bloch matrix d0 I + d . sigma.
Matrix bloch_matrix(const DVector& d);

/// Two-band model on the N x N grid. With `flat` set, d is normalized to
/// p.target_norm at every grid point.
MomentumModel haldane_model(const HaldaneParams& p, std::size_t grid,
                            double time = kDefaultEvolutionTime, bool flat = true);

struct PhaseBoundaryError : std::domain_error {
  using std::domain_error::domain_error;
};

/// C = -1/2 [sgn(M + 3 sin phi) - sgn(M - 3 sin phi)], in units where
/// 3 sqrt(3) t2 = 3 t1 (t2 / t1 = 1 / sqrt 3, t1 = 1). Throws on a boundary.
int chern_analytic(const HaldaneParams& p);

struct GapClosedError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Lattice field-strength Chern number of the lowest band of a d = 2 model.
/// Throws GapClosedError if the two lowest levels touch on the grid.
int chern_fhs(const MomentumModel& model);

/// Real (unrounded) Chern sum before integer rounding; used by chern_fhs.
double chern_fhs_raw(const MomentumModel& model);

struct BottResult {
  double value = 0.0;
  double gap = 0.0;
  double mean_level_spacing = 0.0;
};

/// Bott index (1 / 2 pi) Im tr log(Vx Vy Vx^dagger Vy^dagger) of the lower
/// band of U, where Vx, Vy are exp(2 pi i X / N), exp(2 pi i Y / N) projected
/// onto the lowest dim / orbitals eigenstates (sorted by E = -arg(lambda) / T).
/// X, Y are the grid coordinates of the d = 2 site (x) orbital layout; the
/// ordering makes the clean index equal chern_fhs and chern_analytic.
/// Throws GapClosedError unless the gap at the filling exceeds the mean level
/// spacing.
BottResult bott_index(const Matrix& u, double time, int orbitals, std::size_t grid);

struct GapWidthRow {
  double sigma = 0.0;
  double mean_gap = 0.0;
  double mean_width = 0.0;
  double stderr_gap = 0.0;
  double stderr_width = 0.0;
  double mean_ratio = 0.0;
  double stderr_ratio = 0.0;
  std::size_t realizations = 0;
};

struct SweepOptions {
  std::size_t grid = 16;
  double time = kDefaultEvolutionTime;
  std::size_t workers = 1;
  ProtocolOptions protocol{};
};

/// Mean band gap and width of the flat model over noise realizations
/// (stream ids 0 .. realizations - 1) for every sigma.
std::vector<GapWidthRow> noise_sweep_gap_width(const HaldaneParams& p,
                                               const std::vector<double>& sigmas,
                                               std::size_t realizations, std::uint64_t seed,
                                               const SweepOptions& options = {});

struct PhaseDiagramOptions {
  double phi_min = -kPi;
  double phi_max = kPi;
  double mass_min = -4.0;
  double mass_max = 4.0;
  std::size_t phi_cells = 32;
  std::size_t mass_cells = 32;
  double sigma = 3e-2;
  std::size_t realizations = 1;
  SweepOptions sweep{};
};

struct PhaseDiagramCell {
  double phi = 0.0;
  double mass = 0.0;
  /// Mean Bott value over realizations with an open gap (NaN if none).
  double bott = 0.0;
  /// Analytic Chern number, empty on a phase boundary.
  std::optional<int> chern;
  std::size_t gap_closed = 0;
};

/// Cells are ordered phi-major; cell centres sit at the midpoints of the grid.
std::vector<PhaseDiagramCell> phase_diagram(const HaldaneParams& base,
                                            const PhaseDiagramOptions& options,
                                            std::uint64_t seed);

}  // namespace qqft
