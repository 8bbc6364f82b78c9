#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qqft {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Largest dense dimension any routine will build. Guards tensor products
/// against accidental blow-up.
inline constexpr std::size_t kMaxDimension = std::size_t{1} << 13;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotUnitaryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotHermitianError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// max_{ij} |a_ij - b_ij|
double max_abs_diff(const Matrix& a, const Matrix& b);

/// max_{ij} |(U U^dagger - I)_ij|
double unitarity_defect(const Matrix& u);

double hermiticity_defect(const Matrix& h);

/// Entrywise distance after removing a global phase from `a`. The phase is
/// fixed by the largest-magnitude entry of `b`.
double max_abs_diff_up_to_phase(const Matrix& a, const Matrix& b);

/// Unitary DFT matrix, entry (k, j) = exp(2 pi i k j / N) / sqrt(N).
Matrix dft_matrix(std::size_t n);

/// Kronecker product a (x) b, row-major composite index (i_a * dim_b + i_b).
Matrix kron(const Matrix& a, const Matrix& b);

/// Map a generator eigenvalue into the principal branch (-pi, pi].
double principal_phase(double phase);

/// Eigen-decomposition of a unitary matrix U = Q diag(exp(i theta)) Q^dagger,
/// with theta in (-pi, pi) and Q unitary.
///
/// Computed through the Cayley transform K = i (I - U)(I + U)^{-1}, which is
/// Hermitian with eigenvalues tan(theta / 2). The map is monotone on
/// (-pi, pi), so the Hermitian solver returns the phases already sorted in
/// ascending order and never merges distinct eigenphases. U must not have
/// eigenvalues at (or numerically near) -1; `max_abs_phase` bounds how close
/// to the branch cut a phase may sit before WrappedPhaseError is thrown.
struct UnitaryEigensystem {
  RealVector phases;
  Matrix vectors;
};

struct WrappedPhaseError : std::domain_error {
  using std::domain_error::domain_error;
};

UnitaryEigensystem unitary_eigensystem(const Matrix& u, bool compute_vectors = true,
                                       double max_abs_phase = kPi - 1e-6);

/// Eigenphases of a small unitary through complex Schur form. Works for any
/// spectrum, including eigenvalue -1.
UnitaryEigensystem small_unitary_eigensystem(const Matrix& u);

}  // namespace qqft
