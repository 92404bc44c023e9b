#pragma once

#include <cassert>
#include <cstddef>
#include <utility>
#include <vector>

namespace semired {

/// Dense row-major matrix. Instance sizes are tiny (n <= 8), so no blocking
/// or sparse storage.
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Mat identity(std::size_t n, const T& one, const T& zero = T()) {
    Mat m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  static Mat from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Mat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      assert(rows[i].size() == cols);
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const T& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  void append_row(const std::vector<T>& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    assert(r.size() == cols_);
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  Mat transposed() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Rows [first, first+count).
  Mat row_block(std::size_t first, std::size_t count) const {
    Mat out(count, cols_);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(first + i, j);
    return out;
  }

  /// Columns selected by index list, in the given order.
  Mat select_cols(const std::vector<std::size_t>& idx) const {
    Mat out(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) out(i, k) = (*this)(i, idx[k]);
    return out;
  }

  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Vertical concatenation; either side may be empty.
template <class T>
Mat<T> vstack(const Mat<T>& a, const Mat<T>& b) {
  if (b.rows() == 0) return a;
  if (a.rows() == 0) return b;
  assert(a.cols() == b.cols());
  Mat<T> out = a;
  for (std::size_t i = 0; i < b.rows(); ++i) out.append_row(b.row(i));
  return out;
}

}  // namespace semired
