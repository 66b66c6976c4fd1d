#pragma once

#include <vector>

#include "tdblda/matrix.hpp"

namespace tdblda {

inline constexpr double kDefaultEigenTol = 1e-10;
inline constexpr int kJacobiMaxSweeps = 100;
/// sym_eig rejects inputs whose asymmetry exceeds this (relative to ‖S‖_F).
inline constexpr double kSymmetryTol = 1e-12;

/// Eigen decomposition result. `values` ascending; column k of `vectors` pairs
/// with values[k]. Each column's largest-magnitude entry is non-negative.
struct EigenPairs {
  std::vector<double> values;
  Matrix vectors;
  double residual_tol = kDefaultEigenTol;

  std::size_t size() const noexcept { return values.size(); }
  std::vector<double> vector(std::size_t k) const { return vectors.col(k); }
};

/// Full spectrum of a symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps run until a full sweep applies no rotation (every off-diagonal entry
/// is negligible at machine precision). If the sweep cap is reached first and
/// the off-diagonal norm still exceeds tol·‖S‖_F, NoConvergence is raised.
/// Equal eigenvalues keep the column order of the sweep (stable sort).
EigenPairs sym_eig(const Matrix& s, double tol = kDefaultEigenTol);

/// Solves A·w = λ·(B + ridge·I)·w for symmetric A and positive semidefinite B
/// through a Cholesky reduction to a standard symmetric problem. Returned
/// vectors have unit Euclidean norm but are B-orthogonal, not orthogonal.
EigenPairs gen_sym_eig(const Matrix& a, const Matrix& b, double ridge = 0.0, double tol = kDefaultEigenTol);

/// Lower-triangular L with L·Lᵀ = B. Throws FactorizationFailure when B is not
/// numerically positive definite.
Matrix cholesky(const Matrix& b);

/// Flips each column so its largest-magnitude entry is non-negative.
void canonicalize_signs(Matrix& vectors);

}  // namespace tdblda
