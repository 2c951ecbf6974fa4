#include "tamarkin/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace tamarkin {

namespace {

void require_same_field(const PrimeField& a, const PrimeField& b) {
  if (!(a == b)) throw std::invalid_argument("matrix operands over different fields");
}

// Gaussian elimination to reduced row echelon form in place; returns pivot
// columns in order.
std::vector<std::size_t> row_reduce(Matrix& m) {
  const auto& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    }
    const Scalar inv = f.inv(m(row, col));
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = f.mul(m(row, c), inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Scalar factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        m(r, c) = f.sub(m(r, c), f.mul(factor, m(row, c)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Matrix Matrix::identity(PrimeField field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_column(std::size_t c, const Vector& v) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Scalar s) { return s == 0; });
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  require_same_field(field_, rhs.field_);
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
  Matrix out(field_, rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        const Scalar b = rhs(k, j);
        if (b != 0) out(i, j) = field_.add(out(i, j), field_.mul(a, b));
      }
    }
  }
  return out;
}

Vector Matrix::operator*(const Vector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
  Vector out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar a = (*this)(i, k);
      if (a != 0 && v[k] != 0) out[i] = field_.add(out[i], field_.mul(a, v[k]));
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  require_same_field(field_, rhs.field_);
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.add(data_[i], rhs.data_[i]);
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  require_same_field(field_, rhs.field_);
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix difference shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.sub(data_[i], rhs.data_[i]);
  return out;
}

Matrix Matrix::scaled(Scalar s) const {
  Matrix out = *this;
  for (auto& x : out.data_) x = field_.mul(x, s);
  return out;
}

Matrix Matrix::transposed() const {
  Matrix out(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

std::size_t rank(Matrix m) { return row_reduce(m).size(); }

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs size mismatch");
  Matrix aug(a.field(), a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const auto pivots = row_reduce(aug);
  Vector x(a.cols(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == a.cols()) return std::nullopt;
    x[pivots[i]] = aug(i, a.cols());
  }
  return x;
}

std::vector<Vector> nullspace(const Matrix& a) {
  Matrix m = a;
  const auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  const auto& f = a.field();
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(a.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(m(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vector> span_basis(const PrimeField& field, const std::vector<Vector>& vectors) {
  if (vectors.empty()) return {};
  const std::size_t n = vectors.front().size();
  Matrix m(field, vectors.size(), n);
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = vectors[r][c];
  }
  const auto pivots = row_reduce(m);
  std::vector<Vector> out;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    Vector v(n);
    for (std::size_t c = 0; c < n; ++c) v[c] = m(i, c);
    out.push_back(std::move(v));
  }
  return out;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](Scalar s) { return s == 0; });
}

namespace {

// col += factor * other, both sorted sparse.
void axpy(const PrimeField& f, SparseColumn& col, Scalar factor, const SparseColumn& other) {
  SparseColumn out;
  out.reserve(col.size() + other.size());
  std::size_t i = 0, j = 0;
  while (i < col.size() || j < other.size()) {
    if (j == other.size() || (i < col.size() && col[i].first < other[j].first)) {
      out.push_back(col[i++]);
    } else if (i == col.size() || other[j].first < col[i].first) {
      out.emplace_back(other[j].first, f.mul(factor, other[j].second));
      ++j;
    } else {
      const Scalar v = f.add(col[i].second, f.mul(factor, other[j].second));
      if (v != 0) out.emplace_back(col[i].first, v);
      ++i;
      ++j;
    }
  }
  col = std::move(out);
}

}  // namespace

ColumnReduction reduce_columns(const PrimeField& field, std::vector<SparseColumn> columns,
                               bool track_transform) {
  ColumnReduction out;
  const std::size_t n = columns.size();
  out.low.assign(n, std::nullopt);
  if (track_transform) {
    out.transform.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.transform[j] = {{j, 1}};
  }
  std::unordered_map<std::size_t, std::size_t> pivot_owner;
  for (std::size_t j = 0; j < n; ++j) {
    auto& col = columns[j];
    while (!col.empty()) {
      const auto [row, coeff] = col.back();
      auto it = pivot_owner.find(row);
      if (it == pivot_owner.end()) break;
      const std::size_t k = it->second;
      const Scalar pivot = columns[k].back().second;
      const Scalar factor = field.neg(field.mul(coeff, field.inv(pivot)));
      axpy(field, col, factor, columns[k]);
      if (track_transform) axpy(field, out.transform[j], factor, out.transform[k]);
    }
    if (!col.empty()) {
      out.low[j] = col.back().first;
      pivot_owner.emplace(col.back().first, j);
    }
  }
  out.reduced = std::move(columns);
  return out;
}

}  // namespace tamarkin
