#pragma once

// Fixtures and independent oracles shared by the unit and acceptance suites.
// Nothing here calls into the eigensolver or the scatter builders.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "tdblda/dataset.hpp"
#include "tdblda/matrix.hpp"

namespace tdblda::testing {

/// Two classes of 2×2 samples with hand-computable statistics.
inline LabeledMatrixDataset e1_dataset() {
  return make_dataset({Matrix{{1, 0}, {0, 0}}, Matrix{{1, 0}, {0, 2}}, Matrix{{-1, 0}, {0, 0}}, Matrix{{-1, 0}, {0, 2}}},
                      {1, 1, 2, 2});
}

inline Matrix random_matrix(std::mt19937_64& gen, std::size_t rows, std::size_t cols, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(rows, cols);
  for (double& v : m.data()) v = u(gen);
  return m;
}

inline Matrix random_symmetric(std::mt19937_64& gen, std::size_t n) {
  Matrix a = random_matrix(gen, n, n);
  Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
  return s;
}

inline Matrix random_orthogonal(std::mt19937_64& gen, std::size_t n) {
  // Gram-Schmidt on a random square matrix.
  Matrix q = random_matrix(gen, n, n);
  for (std::size_t c = 0; c < n; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < c; ++p) {
        double d = 0.0;
        for (std::size_t r = 0; r < n; ++r) d += q(r, c) * q(r, p);
        for (std::size_t r = 0; r < n; ++r) q(r, c) -= d * q(r, p);
      }
    }
    double len = 0.0;
    for (std::size_t r = 0; r < n; ++r) len += q(r, c) * q(r, c);
    len = std::sqrt(len);
    for (std::size_t r = 0; r < n; ++r) q(r, c) /= len;
  }
  return q;
}

/// Random labelled dataset; class k has a random mean offset, samples add
/// uniform noise. Every class gets at least `min_per_class` samples.
inline LabeledMatrixDataset random_dataset(std::mt19937_64& gen, std::size_t d1, std::size_t d2, int classes,
                                           std::size_t n, std::size_t min_per_class = 2, double spread = 0.5) {
  std::vector<Matrix> means;
  for (int k = 0; k < classes; ++k) means.push_back(random_matrix(gen, d1, d2, -2.0, 2.0));
  std::vector<Matrix> samples;
  std::vector<int> labels;
  std::uniform_int_distribution<int> pick(1, classes);
  const std::size_t guaranteed = static_cast<std::size_t>(classes) * min_per_class;
  for (std::size_t l = 0; l < std::max(n, guaranteed); ++l) {
    const int y = l < guaranteed ? static_cast<int>(l % static_cast<std::size_t>(classes)) + 1 : pick(gen);
    samples.push_back(means[static_cast<std::size_t>(y - 1)] + random_matrix(gen, d1, d2, -spread, spread));
    labels.push_back(y);
  }
  return make_dataset(std::move(samples), std::move(labels));
}

/// Two classes of 8×6 images, per-pixel class gap 0.2 and Gaussian spread
/// 0.02 (so the mean gap is 10× the within-class spread).
inline LabeledMatrixDataset separable_blobs(std::uint64_t seed, std::size_t per_class, double low = 0.35,
                                            double gap = 0.2, double spread = 0.02) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> noise(0.0, spread);
  std::vector<Matrix> samples;
  std::vector<int> labels;
  for (int y = 1; y <= 2; ++y) {
    for (std::size_t s = 0; s < per_class; ++s) {
      Matrix x(8, 6);
      for (double& v : x.data()) v = std::clamp(low + (y - 1) * gap + noise(gen), 0.0, 1.0);
      samples.push_back(std::move(x));
      labels.push_back(y);
    }
  }
  return make_dataset(std::move(samples), std::move(labels));
}

/// The blob fixture split into train and test: 20 per class each.
inline std::pair<LabeledMatrixDataset, LabeledMatrixDataset> blob_train_test(std::uint64_t seed = 7) {
  const LabeledMatrixDataset all = separable_blobs(seed, 40);
  LabeledMatrixDataset train, test;
  train.class_count = test.class_count = 2;
  for (std::size_t l = 0; l < all.size(); ++l) {
    auto& dst = (l % 40) < 20 ? train : test;
    dst.samples.push_back(all.samples[l]);
    dst.labels.push_back(all.labels[l]);
  }
  return {train, test};
}

/// Two or more classes of Gaussian samples with d2 small enough that the
/// projected covariance is invertible for generic directions.
inline LabeledMatrixDataset gaussian_classes(std::mt19937_64& gen, std::size_t d1, std::size_t d2, int classes,
                                             std::size_t per_class, double mean_scale = 1.0) {
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<Matrix> samples;
  std::vector<int> labels;
  for (int y = 1; y <= classes; ++y) {
    Matrix mean(d1, d2);
    for (double& v : mean.data()) v = mean_scale * z(gen);
    for (std::size_t s = 0; s < per_class; ++s) {
      Matrix x = mean;
      for (double& v : x.data()) v += z(gen);
      samples.push_back(std::move(x));
      labels.push_back(y);
    }
  }
  return make_dataset(std::move(samples), std::move(labels));
}

// ---------------------------------------------------------------------------
// Characteristic-polynomial eigen oracle for 2×2 and 3×3 symmetric matrices.

inline double horner(const std::vector<double>& coeffs, double x) {
  double v = 0.0;
  for (double c : coeffs) v = v * x + c;
  return v;
}

/// Polishes a root of the monic polynomial with a few Newton steps.
inline double newton_polish(const std::vector<double>& coeffs, double x) {
  std::vector<double> deriv;
  const std::size_t deg = coeffs.size() - 1;
  for (std::size_t k = 0; k < deg; ++k) deriv.push_back(coeffs[k] * static_cast<double>(deg - k));
  for (int it = 0; it < 4; ++it) {
    const double d = horner(deriv, x);
    if (d == 0.0) break;
    const double step = horner(coeffs, x) / d;
    x -= step;
  }
  return x;
}

/// Eigenvalues (ascending) from the roots of det(λI − A).
inline std::vector<double> charpoly_eigenvalues(const Matrix& a) {
  if (a.rows() == 2) {
    const double tr = a(0, 0) + a(1, 1);
    const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    std::vector<double> coeffs{1.0, -tr, det};
    return {newton_polish(coeffs, tr / 2.0 - disc), newton_polish(coeffs, tr / 2.0 + disc)};
  }
  // λ³ + b λ² + c λ + d
  const double b = -(a(0, 0) + a(1, 1) + a(2, 2));
  const double c = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) + a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0) +
                   a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  const double det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                     a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                     a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  const double d = -det;
  // Depressed cubic t³ + p t + q with λ = t − b/3; three real roots.
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  std::vector<double> roots;
  if (p >= 0.0) {
    roots.assign(3, -b / 3.0);
  } else {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) roots.push_back(m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - b / 3.0);
  }
  std::vector<double> coeffs{1.0, b, c, d};
  for (double& r : roots) r = newton_polish(coeffs, r);
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Unit null vector of (A − λI) for a simple eigenvalue.
inline std::vector<double> charpoly_eigenvector(const Matrix& a, double lambda) {
  if (a.rows() == 2) {
    std::vector<double> v1{a(0, 1), lambda - a(0, 0)};
    std::vector<double> v2{lambda - a(1, 1), a(1, 0)};
    auto& v = std::hypot(v1[0], v1[1]) >= std::hypot(v2[0], v2[1]) ? v1 : v2;
    const double n = std::hypot(v[0], v[1]);
    if (n == 0.0) return {1.0, 0.0};
    return {v[0] / n, v[1] / n};
  }
  std::array<std::array<double, 3>, 3> m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = a(i, j) - (i == j ? lambda : 0.0);
  std::vector<double> best{0, 0, 0};
  double best_n = -1.0;
  for (int p = 0; p < 3; ++p) {
    for (int q = p + 1; q < 3; ++q) {
      const std::vector<double> x{m[p][1] * m[q][2] - m[p][2] * m[q][1], m[p][2] * m[q][0] - m[p][0] * m[q][2],
                                  m[p][0] * m[q][1] - m[p][1] * m[q][0]};
      const double n = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
      if (n > best_n) {
        best_n = n;
        best = x;
      }
    }
  }
  for (double& v : best) v /= best_n;
  return best;
}

/// sin of the angle between two unit vectors, sign-insensitive.
inline double vector_angle_sine(const std::vector<double>& u, const std::vector<double>& v) {
  // ‖u − (u·v)v‖ avoids the cancellation in sqrt(1 − (u·v)²).
  double d = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) d += u[k] * v[k];
  double s = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) s += (u[k] - d * v[k]) * (u[k] - d * v[k]);
  return std::sqrt(s);
}

/// Upper bound on sin of the largest principal angle between span(A) and
/// span(B): ‖(I − A·Aᵀ)·B‖_F, for A with orthonormal columns and B with
/// orthonormal columns of equal count.
inline double subspace_gap(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.rows();
  double sum = 0.0;
  for (std::size_t k = 0; k < b.cols(); ++k) {
    std::vector<double> resid(n);
    for (std::size_t r = 0; r < n; ++r) resid[r] = b(r, k);
    for (std::size_t j = 0; j < a.cols(); ++j) {
      double d = 0.0;
      for (std::size_t r = 0; r < n; ++r) d += a(r, j) * b(r, k);
      for (std::size_t r = 0; r < n; ++r) resid[r] -= d * a(r, j);
    }
    for (double v : resid) sum += v * v;
  }
  return std::sqrt(sum);
}

// ---------------------------------------------------------------------------
// Naive double-loop pair sums over raw samples (class means recomputed here).

struct NaivePairSums {
  double delta = 0.0;
  Matrix between;  // (1/N)·Σ_{i<j} √(N_i N_j) D Dᵀ
};

inline NaivePairSums naive_pair_sums(const LabeledMatrixDataset& data) {
  const std::size_t c = static_cast<std::size_t>(data.class_count);
  const std::size_t d1 = data.rows();
  const std::size_t d2 = data.cols();
  std::vector<std::vector<double>> mean(c, std::vector<double>(d1 * d2, 0.0));
  std::vector<double> count(c, 0.0);
  for (std::size_t l = 0; l < data.size(); ++l) {
    const auto k = static_cast<std::size_t>(data.labels[l] - 1);
    count[k] += 1.0;
    for (std::size_t e = 0; e < d1 * d2; ++e) mean[k][e] += data.samples[l].data()[e];
  }
  for (std::size_t k = 0; k < c; ++k)
    for (double& v : mean[k]) v /= count[k];
  const double n = static_cast<double>(data.size());

  NaivePairSums out;
  out.between = Matrix(d1, d1);
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      if (!(i < j)) continue;
      double sq = 0.0;
      for (std::size_t e = 0; e < d1 * d2; ++e) sq += (mean[i][e] - mean[j][e]) * (mean[i][e] - mean[j][e]);
      out.delta += 0.25 * std::sqrt((count[i] / n) * (count[j] / n)) * sq;
      for (std::size_t r = 0; r < d1; ++r) {
        for (std::size_t s = 0; s < d1; ++s) {
          double acc = 0.0;
          for (std::size_t col = 0; col < d2; ++col) {
            acc += (mean[i][r * d2 + col] - mean[j][r * d2 + col]) * (mean[i][s * d2 + col] - mean[j][s * d2 + col]);
          }
          out.between(r, s) += std::sqrt(count[i] * count[j]) / n * acc;
        }
      }
    }
  }
  return out;
}

/// 1-NN in the raw pixel space by exhaustive search, lowest index on ties.
inline std::vector<int> brute_force_nn(const LabeledMatrixDataset& train, const LabeledMatrixDataset& test) {
  std::vector<int> out;
  for (const Matrix& q : test.samples) {
    double best = INFINITY;
    int label = 0;
    for (std::size_t l = 0; l < train.size(); ++l) {
      double d = 0.0;
      for (std::size_t e = 0; e < q.size(); ++e) {
        const double diff = q.data()[e] - train.samples[l].data()[e];
        d += diff * diff;
      }
      if (d < best) {
        best = d;
        label = train.labels[l];
      }
    }
    out.push_back(label);
  }
  return out;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

}  // namespace tdblda::testing
