#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lcameta/error.hpp"

namespace lcameta::linalg {

/// Dense column-major matrix; just enough for small least-squares problems.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

  std::span<double> column(std::size_t c) { return {data_.data() + c * rows_, rows_}; }
  std::span<const double> column(std::size_t c) const { return {data_.data() + c * rows_, rows_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

class RankDeficiencyError : public NumericError {
 public:
  RankDeficiencyError(std::size_t column, const std::string& name)
      : NumericError("design matrix is rank deficient: column '" + name +
                     "' is collinear with the preceding columns"),
        column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

struct LeastSquaresSolution {
  std::vector<double> coefficients;
  Matrix gram_inverse;  // (X^T X)^{-1} = R^{-1} R^{-T}
  std::vector<double> fitted;
  std::vector<double> residuals;
};

/// Householder QR solve of min ||X b - y||. Requires rows >= cols. A column
/// whose R diagonal falls below 1e-10 of its norm is reported as collinear.
LeastSquaresSolution least_squares_qr(const Matrix& design, std::span<const double> response,
                                      std::span<const std::string> column_names = {});

}  // namespace lcameta::linalg
