#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chowlift/rational.hpp"

namespace chowlift {

using RatVector = std::vector<Rational>;

bool is_zero_vector(const RatVector& v);

// Dense matrix of exact rationals. Row-major; all entries stay reduced
// because every operation routes through Rational arithmetic.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static RatMatrix identity(std::size_t n);
  static RatMatrix from_rows(const std::vector<RatVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  RatVector row(std::size_t r) const;
  void set_row(std::size_t r, const RatVector& v);

  bool is_zero() const;
  bool same_shape(const RatMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

  RatMatrix transposed() const;

  friend bool operator==(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
  RatMatrix scaled(const Rational& s) const;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

// Matrix product kernels. multiply() picks the OpenMP path once the work is
// large enough to pay for it; multiply_serial() is the reference.
RatMatrix multiply_serial(const RatMatrix& a, const RatMatrix& b);
RatMatrix multiply_parallel(const RatMatrix& a, const RatMatrix& b);
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);

RatVector vec_matrix(const RatVector& x, const RatMatrix& m);  // row vector * m
RatVector vec_add(const RatVector& a, const RatVector& b);
RatVector vec_sub(const RatVector& a, const RatVector& b);
RatVector vec_scale(const RatVector& a, const Rational& s);
Rational dot(const RatVector& a, const RatVector& b);

// Reduced row echelon form; returns the pivot column of each nonzero row.
RatMatrix rref(const RatMatrix& m, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const RatMatrix& m);

// Basis of the null space {v : m v = 0}, one vector per row, echelon order.
// A matrix with no pivots (zero or empty) yields the full standard basis.
RatMatrix kernel(const RatMatrix& m);

// Echelon basis of the row space.
RatMatrix row_space_basis(const RatMatrix& m);

// Basis of the intersection of two row spans inside the same ambient space.
// Throws AmbientMismatchError if the ambient dimensions differ.
RatMatrix intersect_subspaces(const RatMatrix& u, const RatMatrix& v);

bool in_row_span(const RatVector& v, const RatMatrix& basis);
bool span_equal(const RatMatrix& u, const RatMatrix& v);

// Coordinates of v in the given row basis, if v lies in its span.
std::optional<RatVector> express_in_row_basis(const RatVector& v,
                                              const RatMatrix& basis);

}  // namespace chowlift
