#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdblda/class_stats.hpp"
#include "tdblda/dataset.hpp"
#include "tdblda/matrix.hpp"

namespace tdblda {

enum class Method { TwoDBLDA, TwoDLDA, TwoDPCA, L2BLDA };

/// Lower-case command-line names: 2dblda, 2dlda, 2dpca, l2blda.
std::string_view method_name(Method m) noexcept;
Method parse_method(std::string_view name);

/// Eigenvalues with |λ| ≤ this fraction of max|λ| count as zero when
/// selecting projection directions.
inline constexpr double kNonzeroEigenvalueFraction = 1e-10;
inline constexpr double kOrthonormalityTol = 1e-8;

/// A fitted left projection X ↦ WᵀX. For L2BLDA the input shape is (n, 1).
struct Projector {
  Matrix w;                          // d1×r
  std::vector<double> eigenvalues;   // the r selected values, in selection order
  Method method = Method::TwoDBLDA;
  std::size_t d1 = 0;
  std::size_t d2 = 0;

  std::size_t rank() const noexcept { return w.cols(); }
  /// ‖WᵀW − I‖_F.
  double orthonormality_error() const;
};

Projector fit_2dblda(const LabeledMatrixDataset& data, std::size_t r);

/// Generalized-eigenproblem 2DLDA. Without an explicit ridge, auto_ridge()
/// decides whether S_w needs regularizing.
Projector fit_2dlda(const LabeledMatrixDataset& data, std::size_t r, std::optional<double> ridge = std::nullopt);

/// 1e-6·trace(S_w)/d1 when S_w is numerically singular, otherwise 0.
double auto_ridge(const Matrix& within);

Projector fit_2dpca(const LabeledMatrixDataset& data, std::size_t r);

/// Vector-space variant; each sample must be an n×1 column.
Projector fit_l2blda(const LabeledMatrixDataset& vectors, std::size_t r);

/// Dispatches on method. L2BLDA vectorizes matrix samples first.
Projector fit(Method method, const LabeledMatrixDataset& data, std::size_t r, std::optional<double> ridge = std::nullopt);

/// WᵀX, shape r×d2.
Matrix project(const Projector& p, const Matrix& x);

/// W·Wᵀ·X. Rejects 2DLDA projectors and any W that is not orthonormal.
Matrix reconstruct(const Projector& p, const Matrix& x);

/// Accepts an image for a projector of either kind: matrix-shaped inputs
/// are flattened for L2BLDA projectors.
Matrix conform_input(const Projector& p, const Matrix& x);

/// The bound criterion at W evaluated sample by sample:
/// −(1/N)·Σ_{i<j} √(N_i N_j)·‖Wᵀ(X̄_i − X̄_j)‖_F² + Δ·Σ_i Σ_s ‖Wᵀ(X_is − X̄_i)‖_F².
double bound_objective(const LabeledMatrixDataset& data, const ClassStatistics& stats, const Matrix& w);

// Text format: header `method,d1,d2,r`, then d1 rows of r comma-separated
// values (shortest round-trip decimal). Eigenvalues are not persisted.
std::string serialize_projector(const Projector& p);
Projector deserialize_projector(std::string_view text);
void save_projector(const Projector& p, const std::filesystem::path& path);
Projector load_projector(const std::filesystem::path& path);

}  // namespace tdblda
