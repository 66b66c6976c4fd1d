#pragma once

#include <cstddef>
#include <vector>

#include "tdblda/dataset.hpp"
#include "tdblda/matrix.hpp"

namespace tdblda {

/// Per-class summaries. Index k of each vector refers to class label k+1.
struct ClassStatistics {
  std::vector<std::size_t> counts;
  std::vector<double> priors;
  std::vector<Matrix> class_means;
  Matrix overall_mean;
  std::size_t total = 0;

  int class_count() const noexcept { return static_cast<int>(counts.size()); }
};

/// All matrices d1×d1 and symmetric.
struct ScatterMatrices {
  Matrix between;  // S_b, carries 1/N
  Matrix within;   // S_w, carries 1/N
  /// Unnormalized Σ_i Σ_s (X_is − X̄_i)(X_is − X̄_i)ᵀ.
  Matrix within_sum;
  /// (1/N)·Σ_{i<j} √(N_i N_j)(X̄_i − X̄_j)(X̄_i − X̄_j)ᵀ, entering S with a minus sign.
  Matrix pairwise_between;
  /// The Bhattacharyya-bound criterion matrix: −pairwise_between + Δ·within_sum.
  Matrix bound;
  double delta = 0.0;
};

ClassStatistics compute_stats(const LabeledMatrixDataset& data);

/// Δ = ¼·Σ_{i<j} √(P_i P_j)·‖X̄_i − X̄_j‖_F². Zero for a single class.
double delta(const ClassStatistics& stats);

ScatterMatrices build_scatters(const LabeledMatrixDataset& data, const ClassStatistics& stats);

}  // namespace tdblda
