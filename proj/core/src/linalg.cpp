#include "qqft/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

namespace qqft {

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double unitarity_defect(const Matrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("unitarity_defect: matrix is not square");
  return max_abs_diff(u * u.adjoint(), Matrix::Identity(u.rows(), u.cols()));
}

double hermiticity_defect(const Matrix& h) {
  if (h.rows() != h.cols()) throw DimensionError("hermiticity_defect: matrix is not square");
  return max_abs_diff(h, h.adjoint());
}

double max_abs_diff_up_to_phase(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff_up_to_phase: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  Complex phase{1.0, 0.0};
  if (std::abs(a(r, c)) > 0.0 && std::abs(b(r, c)) > 0.0) {
    phase = (b(r, c) / a(r, c));
    phase /= std::abs(phase);
  }
  return max_abs_diff(a * phase, b);
}

Matrix dft_matrix(std::size_t n) {
  if (n == 0) throw DimensionError("dft_matrix: size must be positive");
  Matrix omega(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      // Reduce k*j mod n first so large exponents stay exact.
      const double angle = kTwoPi * static_cast<double>((k * j) % n) / static_cast<double>(n);
      omega(k, j) = std::polar(norm, angle);
    }
  }
  return omega;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const auto rows = static_cast<std::size_t>(a.rows() * b.rows());
  const auto cols = static_cast<std::size_t>(a.cols() * b.cols());
  if (rows > kMaxDimension || cols > kMaxDimension) {
    throw DimensionError("kron: result dimension " + std::to_string(rows) + " exceeds limit " +
                         std::to_string(kMaxDimension));
  }
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double principal_phase(double phase) {
  double wrapped = std::remainder(phase, kTwoPi);
  // remainder() lands in [-pi, pi]; push the lower edge (and values within
  // rounding of it) onto +pi.
  if (wrapped <= -kPi + 1e-12) wrapped += kTwoPi;
  return wrapped;
}

UnitaryEigensystem unitary_eigensystem(const Matrix& u, bool compute_vectors,
                                       double max_abs_phase) {
  if (u.rows() != u.cols()) throw DimensionError("unitary_eigensystem: matrix is not square");
  const Eigen::Index n = u.rows();
  UnitaryEigensystem out;
  if (n == 0) return out;

  const Matrix identity = Matrix::Identity(n, n);
  // (I - U) and (I + U)^{-1} commute, so K = i (I + U)^{-1} (I - U).
  Eigen::PartialPivLU<Matrix> lu(identity + u);
  Matrix cayley = Complex{0.0, 1.0} * lu.solve(identity - u);
  cayley = 0.5 * (cayley + cayley.adjoint()).eval();
  if (!cayley.allFinite()) {
    throw WrappedPhaseError("unitary_eigensystem: eigenvalue at -1 (phase on the branch cut)");
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      cayley, compute_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("unitary_eigensystem: Hermitian eigensolver failed");
  }
  out.phases.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.phases(i) = 2.0 * std::atan(solver.eigenvalues()(i));
    if (std::abs(out.phases(i)) >= max_abs_phase) {
      throw WrappedPhaseError("unitary_eigensystem: eigenphase " + std::to_string(out.phases(i)) +
                              " is too close to the branch cut");
    }
  }
  if (compute_vectors) out.vectors = solver.eigenvectors();
  return out;
}

UnitaryEigensystem small_unitary_eigensystem(const Matrix& u) {
  if (u.rows() != u.cols()) {
    throw DimensionError("small_unitary_eigensystem: matrix is not square");
  }
  const Eigen::Index n = u.rows();
  UnitaryEigensystem out;
  out.phases.resize(n);
  if (n == 1) {
    out.phases(0) = std::arg(u(0, 0));
    out.vectors = Matrix::Identity(1, 1);
    return out;
  }
  // For a normal matrix the Schur form is diagonal and the Schur vectors are
  // eigenvectors.
  Eigen::ComplexSchur<Matrix> schur(u, true);
  out.vectors = schur.matrixU();
  for (Eigen::Index i = 0; i < n; ++i) out.phases(i) = std::arg(schur.matrixT()(i, i));
  return out;
}

}  // namespace qqft
