#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace genpf {

/// Small dense row-major matrix. The systems this library handles are
/// tiny (tens of rows), so storage is a flat vector and nothing fancier.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  template <typename U, typename Convert>
  Matrix<U> map(Convert convert) const {
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = convert((*this)(i, j));
    return out;
  }

  /// Matrix formed by the listed columns, in the listed order.
  Matrix select_columns(const std::vector<std::size_t>& columns) const {
    Matrix out(rows_, columns.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < columns.size(); ++k) out(i, k) = (*this)(i, columns[k]);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <typename T, typename V>
std::vector<T> multiply(const Matrix<T>& m, const std::vector<V>& x) {
  if (m.cols() != x.size()) throw std::invalid_argument("dimension mismatch in matrix-vector product");
  std::vector<T> out(m.rows(), T(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    T acc(0);
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * x[j];
    out[i] = acc;
  }
  return out;
}

}  // namespace genpf
