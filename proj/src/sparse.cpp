#include "gcolex/sparse.hpp"

#include <map>
#include <stdexcept>

namespace gcolex {

Rational dot(const SparseVector& a, const SparseVector& b) {
  Rational s;
  auto i = a.begin(), j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      s += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return s;
}

SparseVector axpy(const Rational& alpha, const SparseVector& x, const SparseVector& y) {
  SparseVector out;
  auto i = x.begin(), j = y.begin();
  auto push = [&](std::uint32_t k, Rational v) {
    if (!v.is_zero()) out.push_back({k, v});
  };
  while (i != x.end() || j != y.end()) {
    if (j == y.end() || (i != x.end() && i->first < j->first)) {
      push(i->first, alpha * i->second);
      ++i;
    } else if (i == x.end() || j->first < i->first) {
      push(j->first, j->second);
      ++j;
    } else {
      push(i->first, alpha * i->second + j->second);
      ++i;
      ++j;
    }
  }
  return out;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  m.cols_.resize(n);
  for (std::size_t j = 0; j < n; ++j) m.cols_[j].push_back({static_cast<std::uint32_t>(j), Rational(1)});
  return m;
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, std::vector<SparseVector> cols) {
  SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = std::move(cols);
  return m;
}

SparseMatrix SparseMatrix::from_operator(const OperatorAsSum& op, const LocalSpace& space, const FiniteGroup& g) {
  if (space.size() > (std::uint64_t{1} << 26)) throw std::length_error("operator matrix too large");
  CompiledFactor f(op, space, g);
  const Rational den(1, f.denominator());
  std::vector<Elem> digits(space.sites().size());
  SparseMatrix m(space.size(), space.size());
  m.cols_.resize(space.size());
  std::map<std::uint64_t, std::int64_t> acc;
  for (std::uint64_t c = 0; c < space.size(); ++c) {
    space.decode(c, digits);
    acc.clear();
    f.apply(c, digits, 1, [&](std::uint64_t out, std::int64_t w) { acc[out] += w; });
    for (const auto& [r, w] : acc)
      if (w != 0) m.cols_[c].push_back({static_cast<std::uint32_t>(r), Rational(w) * den});
  }
  return m;
}

Rational SparseMatrix::at(std::size_t i, std::size_t j) const {
  for (const auto& [r, v] : cols_.at(j))
    if (r == i) return v;
  return Rational(0);
}

SparseVector SparseMatrix::apply(const SparseVector& v) const {
  std::map<std::uint32_t, Rational> acc;
  for (const auto& [j, x] : v)
    for (const auto& [i, a] : cols_.at(j)) acc[i] += a * x;
  SparseVector out;
  for (const auto& [i, x] : acc)
    if (!x.is_zero()) out.push_back({i, x});
  return out;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_.size(), rows_);
  t.cols_.resize(rows_);
  for (std::size_t j = 0; j < cols_.size(); ++j)
    for (const auto& [i, v] : cols_[j]) t.cols_[i].push_back({static_cast<std::uint32_t>(j), v});
  return t;
}

Rational SparseMatrix::trace() const {
  Rational t;
  for (std::size_t j = 0; j < cols_.size(); ++j) t += at(j, j);
  return t;
}

bool SparseMatrix::is_zero() const {
  for (const auto& c : cols_)
    if (!c.empty()) return false;
  return true;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  SparseMatrix m(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) m.cols_[j] = a.apply(b.cols_[j]);
  return m;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch");
  SparseMatrix m(a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) m.cols_[j] = axpy(Rational(1), a.cols_[j], b.cols_[j]);
  return m;
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return a + Rational(-1) * b; }

SparseMatrix operator*(const Rational& s, const SparseMatrix& a) {
  SparseMatrix m(a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!s.is_zero())
      for (const auto& [i, v] : a.cols_[j]) m.cols_[j].push_back({i, v * s});
  return m;
}

}  // namespace gcolex
