#ifndef FLEXLINES_MATRIX_HPP
#define FLEXLINES_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "flexlines/field.hpp"

namespace flex {

// Dense row-major matrix over an exact field.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(const Field& f, std::size_t rows, std::size_t cols);
  static ExactMatrix identity(const Field& f, std::size_t n);
  static ExactMatrix from_rows(const Field& f, const std::vector<std::vector<Scalar>>& rows);

  const Field& field() const { return f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::vector<Scalar> row(std::size_t i) const;

  ExactMatrix transpose() const;
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend std::vector<Scalar> operator*(const ExactMatrix& a, const std::vector<Scalar>& v);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

 private:
  Field f_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

// Bareiss on an integer-scaled copy over Q; Gaussian elimination over finite fields.
Scalar determinant(const ExactMatrix& m);
std::size_t rank(const ExactMatrix& m);
std::vector<std::vector<Scalar>> nullspace(const ExactMatrix& m);
ExactMatrix inverse(const ExactMatrix& m);  // SingularMatrix when det = 0

}  // namespace flex

#endif
