#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace pwmlp {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::vector<double> column(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  const std::vector<double>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Sum accumulator built on the error-free TwoSum transformation. The
/// rounding error of every addition is carried in a second term and folded
/// back in at the end.
class CompensatedSum {
 public:
  explicit CompensatedSum(double init = 0.0) noexcept : sum_(init) {}

  void add(double v) noexcept {
    const double s = sum_ + v;
    const double bp = s - sum_;
    const double err = (sum_ - (s - bp)) + (v - bp);
    sum_ = s;
    carry_ += err;
  }

  /// Adds a * b exactly: the product's rounding error (from fma) is
  /// accumulated alongside the rounded product.
  void add_product(double a, double b) noexcept {
    const double p = a * b;
    add(p);
    carry_ += std::fma(a, b, -p);
  }

  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace pwmlp
