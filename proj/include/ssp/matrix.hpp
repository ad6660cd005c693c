#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ssp {

/// Small dense row-major matrix. Tableaux and Shu-Osher arrays are at most
/// 4x4 here, so nothing beyond plain storage and a handful of products is
/// provided.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const noexcept { return data_; }

  bool is_square() const noexcept { return rows_ == cols_; }
  bool is_strictly_lower() const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

std::vector<double> operator*(const Matrix& m, std::span<const double> v);
Matrix operator*(const Matrix& a, const Matrix& b);

/// Solves L X = B for X where L is unit lower triangular (the diagonal is
/// assumed to be one and is not read). Column-by-column forward substitution.
Matrix solve_unit_lower(const Matrix& lower, const Matrix& rhs);
std::vector<double> solve_unit_lower(const Matrix& lower, std::span<const double> rhs);

}  // namespace ssp
