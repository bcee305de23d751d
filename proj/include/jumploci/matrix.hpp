#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "jumploci/field.hpp"
#include "jumploci/poly.hpp"

namespace jumploci {

/// Dense matrix over a field, row-major.
class ScalarMatrix {
 public:
  ScalarMatrix(FieldPtr field, std::size_t rows, std::size_t cols);
  static ScalarMatrix identity(FieldPtr field, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldPtr& field_ptr() const { return field_; }
  const Field& field() const { return *field_; }

  Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ScalarMatrix transpose() const;
  ScalarMatrix operator*(const ScalarMatrix& other) const;
  bool is_zero() const;
  bool equals(const ScalarMatrix& other) const;

  /// Columns form a basis of {v : M v = 0}.
  ScalarMatrix kernel() const;

 private:
  FieldPtr field_;
  std::size_t rows_, cols_;
  std::vector<Scalar> data_;
};

/// Exact rank. Rational matrices go through fraction-free (Bareiss)
/// elimination on integers; finite fields use plain Gaussian elimination.
std::size_t matrix_rank(const ScalarMatrix& m);

/// Horizontal concatenation [a | b]; row counts must agree.
ScalarMatrix hconcat(const ScalarMatrix& a, const ScalarMatrix& b);

/// Dense matrix over a polynomial ring, row-major.
class PolyMatrix {
 public:
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols);
  static PolyMatrix identity(RingPtr ring, std::size_t n);
  /// Builds from a list of columns (each of length `rows`).
  static PolyMatrix from_columns(RingPtr ring, std::size_t rows,
                                 const std::vector<std::vector<Poly>>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const RingPtr& ring() const { return ring_; }

  Poly& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Poly& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Poly> column(std::size_t c) const;
  PolyMatrix transpose() const;
  PolyMatrix operator*(const PolyMatrix& other) const;
  PolyMatrix operator+(const PolyMatrix& other) const;
  PolyMatrix operator-(const PolyMatrix& other) const;
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);
  bool is_zero() const;

  PolyMatrix select_rows(const std::vector<std::size_t>& rows) const;
  PolyMatrix select_columns(const std::vector<std::size_t>& cols) const;

  ScalarMatrix evaluate(const std::vector<Scalar>& point, const Embedding& embedding) const;
  PolyMatrix mapped(RingPtr target, const Embedding& embedding) const;
  PolyMatrix recast(RingPtr target) const;

  std::vector<std::vector<std::string>> to_strings() const;

 private:
  RingPtr ring_;
  std::size_t rows_, cols_;
  std::vector<Poly> data_;
};

/// Block-diagonal a (+) b.
PolyMatrix block_diagonal(const PolyMatrix& a, const PolyMatrix& b);
/// Horizontal concatenation [a | b].
PolyMatrix hconcat(const PolyMatrix& a, const PolyMatrix& b);

/// Determinant by cofactor expansion; square matrices of size <= 32.
Poly determinant(const PolyMatrix& m);

}  // namespace jumploci
