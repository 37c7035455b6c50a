#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gcolex/compiled.hpp"
#include "gcolex/operators.hpp"
#include "gcolex/rational.hpp"

namespace gcolex {

using SparseVector = std::vector<std::pair<std::uint32_t, Rational>>;  // sorted by index, no zeros

Rational dot(const SparseVector& a, const SparseVector& b);
SparseVector axpy(const Rational& alpha, const SparseVector& x, const SparseVector& y);  // alpha x + y

// Exact rational matrix stored by columns.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_columns(std::size_t rows, std::vector<SparseVector> cols);
  // Matrix of an operator on the space spanned by a local space.
  static SparseMatrix from_operator(const OperatorAsSum& op, const LocalSpace& space, const FiniteGroup& g);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_.size(); }
  const SparseVector& col(std::size_t j) const { return cols_[j]; }
  Rational at(std::size_t i, std::size_t j) const;

  SparseVector apply(const SparseVector& v) const;
  SparseMatrix transpose() const;
  Rational trace() const;
  bool is_zero() const;

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator*(const Rational& s, const SparseMatrix& a);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVector> cols_;
};

}  // namespace gcolex
