#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace tdblda {

/// Dense real matrix, row-major. Entries are guaranteed finite: every
/// constructor and factory that accepts external values rejects NaN/Inf.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);
  static Matrix column(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }
  std::span<const double> row(std::size_t r) const noexcept {
    return std::span<const double>(data_).subspan(r * cols_, cols_);
  }
  std::vector<double> col(std::size_t c) const;
  void set_col(std::size_t c, std::span<const double> values);

  Matrix transpose() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s) noexcept;

  // Exact element-wise equality.
  friend bool operator==(const Matrix& a, const Matrix& b) noexcept {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

/// A·Bᵀ without materializing the transpose.
Matrix multiply_abt(const Matrix& a, const Matrix& b);
/// Aᵀ·B without materializing the transpose.
Matrix multiply_atb(const Matrix& a, const Matrix& b);
/// Adds s·A·Aᵀ into acc (acc must be A.rows() square).
void add_outer(Matrix& acc, const Matrix& a, double s = 1.0);

double frobenius_norm(const Matrix& a);
double squared_frobenius_norm(const Matrix& a) noexcept;
double trace(const Matrix& a);
/// (A + Aᵀ) / 2.
Matrix symmetrize(const Matrix& a);
/// max |A(i,j) − A(j,i)| relative to max(‖A‖_F, tiny).
double asymmetry(const Matrix& a);

double dot(std::span<const double> a, std::span<const double> b) noexcept;
double norm2(std::span<const double> a) noexcept;

/// Row-major flattening into an n×1 column.
Matrix vectorize(const Matrix& a);

void require_finite(const Matrix& a);

}  // namespace tdblda
