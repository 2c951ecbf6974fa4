#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tamarkin/field.hpp"

namespace tamarkin {

using Scalar = PrimeField::Element;
using Vector = std::vector<Scalar>;

/// Dense row-major matrix over F_p. The field travels with the matrix so
/// that every operation can be checked for compatible characteristics.
class Matrix {
 public:
  Matrix() = default;
  Matrix(PrimeField field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(PrimeField field, std::size_t n);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  Vector column(std::size_t c) const;
  void set_column(std::size_t c, const Vector& v);
  bool is_zero() const;

  Matrix operator*(const Matrix& rhs) const;
  Vector operator*(const Vector& v) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix scaled(Scalar s) const;
  Matrix transposed() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  PrimeField field_{2};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

std::size_t rank(Matrix m);

/// One solution of A x = b, or nullopt when the system is inconsistent.
std::optional<Vector> solve(const Matrix& a, const Vector& b);

/// Basis of {x : A x = 0}, one vector per free column.
std::vector<Vector> nullspace(const Matrix& a);

/// Row-reduces the given vectors and returns a basis of their span.
std::vector<Vector> span_basis(const PrimeField& field, const std::vector<Vector>& vectors);

bool is_zero(const Vector& v);

/// Sparse column as (index, coefficient) pairs sorted by index, nonzero
/// coefficients only.
using SparseColumn = std::vector<std::pair<std::size_t, Scalar>>;

/// Output of the standard persistence column reduction.
struct ColumnReduction {
  /// low[j] = pivot row of reduced column j, or nullopt when it reduced to 0.
  std::vector<std::optional<std::size_t>> low;
  /// Reduced columns R = D V.
  std::vector<SparseColumn> reduced;
  /// V with R = D V (empty unless requested). Column j is a combination of
  /// original columns with indices <= j.
  std::vector<SparseColumn> transform;
};

/// Left-to-right column reduction: adds earlier columns to later ones until
/// all nonzero pivots are distinct. Column j may only reference rows < j
/// for the result to be a filtered reduction; this is not checked here.
ColumnReduction reduce_columns(const PrimeField& field, std::vector<SparseColumn> columns,
                               bool track_transform);

}  // namespace tamarkin
