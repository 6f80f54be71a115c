#include "chowlift/linalg.hpp"

#include <sstream>

#include "chowlift/errors.hpp"
#include "chowlift/parallel.hpp"

namespace chowlift {

bool is_zero_vector(const RatVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows,
                               std::size_t cols) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

RatVector RatMatrix::row(std::size_t r) const {
  RatVector v(cols_);
  for (std::size_t c = 0; c < cols_; ++c) v[c] = at(r, c);
  return v;
}

void RatMatrix::set_row(std::size_t r, const RatVector& v) {
  for (std::size_t c = 0; c < cols_; ++c) at(r, c) = v[c];
}

bool RatMatrix::is_zero() const {
  for (const auto& x : entries_)
    if (x != 0) return false;
  return true;
}

RatMatrix RatMatrix::transposed() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix r(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.entries_.size(); ++i)
    r.entries_[i] = a.entries_[i] + b.entries_[i];
  return r;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix r(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.entries_.size(); ++i)
    r.entries_[i] = a.entries_[i] - b.entries_[i];
  return r;
}

RatMatrix RatMatrix::scaled(const Rational& s) const {
  RatMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    r.entries_[i] = entries_[i] * s;
  return r;
}

std::string RatMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? "; " : "");
    for (std::size_t c = 0; c < cols_; ++c)
      os << (c ? " " : "") << at(r, c).get_str();
  }
  os << "]";
  return os.str();
}

namespace {

void multiply_row(const RatMatrix& a, const RatMatrix& b, RatMatrix& out,
                  std::size_t r) {
  const std::size_t inner = a.cols();
  const std::size_t cols = b.cols();
  for (std::size_t k = 0; k < inner; ++k) {
    const Rational& aik = a.at(r, k);
    if (aik == 0) continue;
    for (std::size_t c = 0; c < cols; ++c) {
      const Rational& bkc = b.at(k, c);
      if (bkc != 0) out.at(r, c) += aik * bkc;
    }
  }
}

}  // namespace

RatMatrix multiply_serial(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix out(a.rows(), b.cols());
  serial_for(a.rows(), [&](std::size_t r) { multiply_row(a, b, out, r); });
  return out;
}

RatMatrix multiply_parallel(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix out(a.rows(), b.cols());
  parallel_for(a.rows(), [&](std::size_t r) { multiply_row(a, b, out, r); });
  return out;
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows())
    throw AmbientMismatchError("matrix product shape mismatch: " +
                               std::to_string(a.cols()) + " vs " +
                               std::to_string(b.rows()));
  // Small products are faster serial; the cutoff only matters for the big
  // validation sweeps and the benchmark.
  if (a.rows() * a.cols() * b.cols() >= 32768) return multiply_parallel(a, b);
  return multiply_serial(a, b);
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  return multiply(a, b);
}

RatVector vec_matrix(const RatVector& x, const RatMatrix& m) {
  RatVector out(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (x[r] == 0) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Rational& e = m.at(r, c);
      if (e != 0) out[c] += x[r] * e;
    }
  }
  return out;
}

RatVector vec_add(const RatVector& a, const RatVector& b) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVector vec_sub(const RatVector& a, const RatVector& b) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVector vec_scale(const RatVector& a, const Rational& s) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

RatMatrix rref(const RatMatrix& m, std::vector<std::size_t>* pivots) {
  RatMatrix a = m;
  if (pivots) pivots->clear();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
    std::size_t sel = pivot_row;
    while (sel < a.rows() && a.at(sel, col) == 0) ++sel;
    if (sel == a.rows()) continue;
    if (sel != pivot_row)
      for (std::size_t c = 0; c < a.cols(); ++c)
        swap(a.at(sel, c), a.at(pivot_row, c));
    const Rational inv = 1 / Rational(a.at(pivot_row, col));
    for (std::size_t c = col; c < a.cols(); ++c) a.at(pivot_row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == pivot_row || a.at(r, col) == 0) continue;
      const Rational factor = a.at(r, col);
      for (std::size_t c = col; c < a.cols(); ++c)
        a.at(r, c) -= factor * a.at(pivot_row, c);
    }
    if (pivots) pivots->push_back(col);
    ++pivot_row;
  }
  return a;
}

std::size_t rank(const RatMatrix& m) {
  std::vector<std::size_t> pivots;
  rref(m, &pivots);
  return pivots.size();
}

RatMatrix kernel(const RatMatrix& m) {
  std::vector<std::size_t> pivots;
  const RatMatrix r = rref(m, &pivots);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : pivots) is_pivot[p] = true;

  RatMatrix basis(n - pivots.size(), n);
  std::size_t out = 0;
  for (std::size_t free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    basis.at(out, free_col) = 1;
    for (std::size_t pr = 0; pr < pivots.size(); ++pr)
      basis.at(out, pivots[pr]) = -r.at(pr, free_col);
    ++out;
  }
  return basis;
}

RatMatrix row_space_basis(const RatMatrix& m) {
  std::vector<std::size_t> pivots;
  const RatMatrix r = rref(m, &pivots);
  RatMatrix basis(pivots.size(), m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t c = 0; c < m.cols(); ++c) basis.at(i, c) = r.at(i, c);
  return basis;
}

RatMatrix intersect_subspaces(const RatMatrix& u, const RatMatrix& v) {
  if (u.cols() != v.cols())
    throw AmbientMismatchError(
        "subspace intersection: ambient dimensions differ (" +
        std::to_string(u.cols()) + " vs " + std::to_string(v.cols()) + ")");
  const std::size_t n = u.cols();
  // Solve a U = b V: null space of [U^T | -V^T], then map the a-part back.
  RatMatrix stacked(n, u.rows() + v.rows());
  for (std::size_t c = 0; c < u.rows(); ++c)
    for (std::size_t r = 0; r < n; ++r) stacked.at(r, c) = u.at(c, r);
  for (std::size_t c = 0; c < v.rows(); ++c)
    for (std::size_t r = 0; r < n; ++r)
      stacked.at(r, u.rows() + c) = -v.at(c, r);
  const RatMatrix null_basis = kernel(stacked);

  RatMatrix raw(null_basis.rows(), n);
  for (std::size_t k = 0; k < null_basis.rows(); ++k)
    for (std::size_t c = 0; c < u.rows(); ++c)
      if (null_basis.at(k, c) != 0)
        for (std::size_t j = 0; j < n; ++j)
          raw.at(k, j) += null_basis.at(k, c) * u.at(c, j);
  return row_space_basis(raw);
}

bool in_row_span(const RatVector& v, const RatMatrix& basis) {
  return express_in_row_basis(v, basis).has_value();
}

bool span_equal(const RatMatrix& u, const RatMatrix& v) {
  if (u.cols() != v.cols()) return false;
  return row_space_basis(u) == row_space_basis(v);
}

std::optional<RatVector> express_in_row_basis(const RatVector& v,
                                              const RatMatrix& basis) {
  // Augment basis^T with v as last column and reduce.
  const std::size_t n = basis.cols();
  RatMatrix aug(n, basis.rows() + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < basis.rows(); ++c) aug.at(r, c) = basis.at(c, r);
    aug.at(r, basis.rows()) = v[r];
  }
  std::vector<std::size_t> pivots;
  const RatMatrix r = rref(aug, &pivots);
  for (std::size_t p : pivots)
    if (p == basis.rows()) return std::nullopt;  // inconsistent row
  RatVector coords(basis.rows());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    coords[pivots[i]] = r.at(i, basis.rows());
  return coords;
}

}  // namespace chowlift
