#include "tdblda/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "tdblda/error.hpp"

namespace tdblda {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.cols(); ++q) sum += 2.0 * a(p, q) * a(p, q);
  return std::sqrt(sum);
}

void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t n = a.rows();

  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(p, k) = a(k, p);
    a(k, q) = s * akp + c * akq;
    a(q, k) = a(k, q);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

EigenPairs sorted_pairs(const Matrix& a, const Matrix& v, double tol) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  EigenPairs out;
  out.residual_tol = tol;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  canonicalize_signs(out.vectors);
  return out;
}

// Solves L·x = b in place (L lower triangular).
void forward_substitute(const Matrix& l, std::span<double> x) {
  for (std::size_t i = 0; i < l.rows(); ++i) {
    double s = x[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x[k];
    x[i] = s / l(i, i);
  }
}

// Solves Lᵀ·x = b in place.
void backward_substitute_transposed(const Matrix& l, std::span<double> x) {
  const std::size_t n = l.rows();
  for (std::size_t ii = n; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x[k];
    x[ii] = s / l(ii, ii);
  }
}

}  // namespace

void canonicalize_signs(Matrix& vectors) {
  for (std::size_t c = 0; c < vectors.cols(); ++c) {
    std::size_t best = 0;
    double best_abs = -1.0;
    for (std::size_t r = 0; r < vectors.rows(); ++r) {
      const double m = std::abs(vectors(r, c));
      if (m > best_abs) {
        best_abs = m;
        best = r;
      }
    }
    if (vectors.rows() > 0 && vectors(best, c) < 0.0) {
      for (std::size_t r = 0; r < vectors.rows(); ++r) vectors(r, c) = -vectors(r, c);
    }
  }
}

EigenPairs sym_eig(const Matrix& s, double tol) {
  if (!s.is_square()) throw Error(ErrorCode::NotSquare, "sym_eig on " + std::to_string(s.rows()) + "x" + std::to_string(s.cols()));
  require_finite(s);
  if (asymmetry(s) > kSymmetryTol) throw Error(ErrorCode::NotSymmetric, "sym_eig input must be symmetrized first");

  const std::size_t n = s.rows();
  Matrix a = s;
  Matrix v = Matrix::identity(n);
  const double norm = frobenius_norm(s);
  const double negligible = 1e-3 * kEps * norm;

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double g = 100.0 * std::abs(apq);
        const bool below_diagonals = sweep > 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
                                     std::abs(a(q, q)) + g == std::abs(a(q, q));
        if (below_diagonals || std::abs(apq) <= negligible) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
        rotated = true;
      }
    }
    if (!rotated) return sorted_pairs(a, v, tol);
  }
  if (off_diagonal_norm(a) > tol * norm) {
    throw Error(ErrorCode::NoConvergence, "Jacobi sweep cap reached");
  }
  return sorted_pairs(a, v, tol);
}

Matrix cholesky(const Matrix& b) {
  if (!b.is_square()) throw Error(ErrorCode::NotSquare, "cholesky");
  const std::size_t n = b.rows();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(b(i, i)));
  const double floor = static_cast<double>(n) * kEps * max_diag;

  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = b(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > floor)) {
      throw Error(ErrorCode::FactorizationFailure,
                  "matrix is not positive definite (pivot " + std::to_string(j) + "); increase the ridge");
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = b(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

EigenPairs gen_sym_eig(const Matrix& a, const Matrix& b, double ridge, double tol) {
  if (!a.is_square() || !b.is_square()) throw Error(ErrorCode::NotSquare, "gen_sym_eig");
  if (a.rows() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "gen_sym_eig operands differ in size");
  const std::size_t n = a.rows();

  Matrix regularized = b;
  for (std::size_t i = 0; i < n; ++i) regularized(i, i) += ridge;
  const Matrix l = cholesky(regularized);

  // C = L⁻¹·A·L⁻ᵀ, built column by column: Y = L⁻¹·A, then C = L⁻¹·Yᵀ.
  Matrix y(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<double> col = a.col(c);
    forward_substitute(l, col);
    y.set_col(c, col);
  }
  const Matrix yt = y.transpose();
  Matrix reduced(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<double> col = yt.col(c);
    forward_substitute(l, col);
    reduced.set_col(c, col);
  }

  EigenPairs pairs = sym_eig(symmetrize(reduced), tol);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> w = pairs.vectors.col(k);
    backward_substitute_transposed(l, w);
    const double len = norm2(w);
    for (double& x : w) x /= len;
    pairs.vectors.set_col(k, w);
  }
  canonicalize_signs(pairs.vectors);
  return pairs;
}

}  // namespace tdblda
