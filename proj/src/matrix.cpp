#include "ssp/matrix.hpp"

#include "ssp/error.hpp"

namespace ssp {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidParameter("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool Matrix::is_strictly_lower() const noexcept {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if ((*this)(i, j) != 0.0) return false;
  return true;
}

std::vector<double> operator*(const Matrix& m, std::span<const double> v) {
  if (v.size() != m.cols()) throw InvalidParameter("matrix-vector size mismatch");
  std::vector<double> out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InvalidParameter("matrix product size mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const double ail = a(i, l);
      if (ail == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += ail * b(l, j);
    }
  return out;
}

Matrix solve_unit_lower(const Matrix& lower, const Matrix& rhs) {
  if (!lower.is_square() || lower.rows() != rhs.rows())
    throw InvalidParameter("forward substitution size mismatch");
  const std::size_t n = lower.rows();
  Matrix x = rhs;
  for (std::size_t c = 0; c < rhs.cols(); ++c)
    for (std::size_t i = 0; i < n; ++i) {
      double v = x(i, c);
      for (std::size_t j = 0; j < i; ++j) v -= lower(i, j) * x(j, c);
      x(i, c) = v;
    }
  return x;
}

std::vector<double> solve_unit_lower(const Matrix& lower, std::span<const double> rhs) {
  Matrix col(rhs.size(), 1);
  for (std::size_t i = 0; i < rhs.size(); ++i) col(i, 0) = rhs[i];
  const Matrix x = solve_unit_lower(lower, col);
  std::vector<double> out(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) out[i] = x(i, 0);
  return out;
}

}  // namespace ssp
