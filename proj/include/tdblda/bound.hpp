#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tdblda/class_stats.hpp"
#include "tdblda/dataset.hpp"
#include "tdblda/matrix.hpp"

namespace tdblda {

/// Class-conditional Gaussians after projecting every sample onto a single
/// direction w (X ↦ wᵀX, a 1×d2 row), sharing one covariance.
struct ProjectedGaussianModel {
  std::vector<std::vector<double>> projected_class_means;  // wᵀX̄_i, length d2 each
  /// Σ̃ = (D − X̄_I)(D − X̄_I)ᵀ: the unnormalized sum of projected within-class
  /// deviation outer products, d2×d2.
  Matrix shared_covariance;
  std::vector<double> priors;
  std::vector<double> direction;
};

struct BoundReport {
  double epsilon_b = 0.0;
  double rhs = 0.0;
  double a_constant = 1.0;
  double b_cap = 0.0;
  double margin = 0.0;  // rhs − epsilon_b
};

/// Per class pair (i < j) quantities of the inequality chain behind the bound.
struct PairInequalities {
  std::size_t i = 0;
  std::size_t j = 0;
  double exponent = 0.0;            // ⅛·(m_i − m_j)Σ̃⁻¹(m_i − m_j)ᵀ
  double projected_gap_sq = 0.0;    // ‖wᵀ(X̄_i − X̄_j)‖₂²
  double mean_gap_sq = 0.0;         // ‖X̄_i − X̄_j‖_F²
  double covariance_trace = 0.0;    // t = ‖Σ̃^{1/2}‖_F²
  // gap²·(1/t)(1 − 1/t) ≤ ¼·‖X̄_i − X̄_j‖_F²
  double shrink_lhs = 0.0;
  double shrink_rhs = 0.0;
  // −gap²/t ≤ −gap² + ¼‖X̄_i − X̄_j‖_F²·t
  double trade_lhs = 0.0;
  double trade_rhs = 0.0;
  bool norm_chain_holds = false;  // gap² ≤ ‖X̄_i − X̄_j‖_F²
  bool shrink_holds = false;
  bool trade_holds = false;
};

struct DirectionCheck {
  BoundReport report;
  std::vector<PairInequalities> pairs;
  bool holds = false;
};

struct TrialRecord {
  std::size_t trial = 0;
  DirectionCheck check;
};

struct BoundVerification {
  std::size_t requested = 0;
  /// Directions whose projected covariance was singular are skipped and
  /// excluded from the success fraction.
  std::size_t skipped = 0;
  std::vector<TrialRecord> trials;
  double success_fraction = 1.0;
};

inline constexpr double kMarginTol = 1e-9;
inline constexpr double kDirectionNormTol = 1e-10;
inline constexpr double kCovarianceFloor = 1e-12;

ProjectedGaussianModel projected_model(const LabeledMatrixDataset& data, const ClassStatistics& stats,
                                       std::span<const double> w);

/// ⅛·(m_i − m_j)Σ̃⁻¹(m_i − m_j)ᵀ for every pair i < j in row-major pair order.
/// Throws SingularCovariance when Σ̃'s smallest eigenvalue is at or below
/// 1e-12·trace(Σ̃).
std::vector<double> pair_exponents(const ProjectedGaussianModel& model);

/// ε_B = Σ_{i<j} √(P_i P_j)·exp(−exponent_ij).
double bhattacharyya_error(const ProjectedGaussianModel& model);

/// (1 − e^{−b})/b, with the limit 1 at b = 0.
double chord_slope(double b_cap);

BoundReport bound_rhs(const LabeledMatrixDataset& data, const ClassStatistics& stats, std::span<const double> w,
                      double b_cap);

/// Evaluates both sides of the bound and every intermediate inequality at w.
/// Without b_cap, the largest pair exponent is used.
DirectionCheck check_direction(const LabeledMatrixDataset& data, const ClassStatistics& stats,
                               std::span<const double> w, std::optional<double> b_cap = std::nullopt);

/// Samples `trials` uniformly random unit directions (trial k draws from
/// Rng(seed).split(k)) and checks the bound at each.
BoundVerification verify_bound(const LabeledMatrixDataset& data, std::size_t trials, std::uint64_t seed);

}  // namespace tdblda
