#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace interdiction {

/// Minimal dense row-major matrix. The games solved here are tiny
/// (tens of rows/columns), so no linear-algebra package is pulled in.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
    std::size_t r = 0;
    for (const auto& row : rows) {
      if (row.size() != m.cols_) throw std::invalid_argument("ragged row in Matrix::from_rows");
      std::size_t c = 0;
      for (double v : row) m(r, c++) = v;
      ++r;
    }
    return m;
  }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double min() const {
    if (data_.empty()) throw std::logic_error("min() of empty matrix");
    return *std::min_element(data_.begin(), data_.end());
  }

  double max() const {
    if (data_.empty()) throw std::logic_error("max() of empty matrix");
    return *std::max_element(data_.begin(), data_.end());
  }

  Matrix shifted(double c) const {
    Matrix out = *this;
    for (double& v : out.data_) v += c;
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace interdiction
