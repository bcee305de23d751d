#include "jumploci/matrix.hpp"

#include <functional>
#include <unordered_map>

#include "jumploci/errors.hpp"

namespace jumploci {

ScalarMatrix::ScalarMatrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_->zero()) {}

ScalarMatrix ScalarMatrix::identity(FieldPtr field, std::size_t n) {
  ScalarMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field->one();
  return m;
}

ScalarMatrix ScalarMatrix::transpose() const {
  ScalarMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

ScalarMatrix ScalarMatrix::operator*(const ScalarMatrix& other) const {
  if (cols_ != other.rows_) throw PreconditionError("matrix shape mismatch in product");
  const Field& F = *field_;
  ScalarMatrix out(field_, rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (F.is_zero(at(r, k))) continue;
      for (std::size_t c = 0; c < other.cols_; ++c)
        out.at(r, c) = F.add(out.at(r, c), F.mul(at(r, k), other.at(k, c)));
    }
  return out;
}

bool ScalarMatrix::is_zero() const {
  for (const auto& s : data_)
    if (!field_->is_zero(s)) return false;
  return true;
}

bool ScalarMatrix::equals(const ScalarMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!field_->equal(data_[i], other.data_[i])) return false;
  return true;
}

ScalarMatrix ScalarMatrix::kernel() const {
  const Field& F = *field_;
  ScalarMatrix a = *this;
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t piv = row;
    while (piv < rows_ && F.is_zero(a.at(piv, col))) ++piv;
    if (piv == rows_) continue;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(a.at(row, c), a.at(piv, c));
    const Scalar inv = F.inv(a.at(row, col));
    for (std::size_t c = 0; c < cols_; ++c) a.at(row, c) = F.mul(a.at(row, c), inv);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || F.is_zero(a.at(r, col))) continue;
      const Scalar f = a.at(r, col);
      for (std::size_t c = 0; c < cols_; ++c) a.at(r, c) = F.sub(a.at(r, c), F.mul(f, a.at(row, c)));
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  ScalarMatrix k(field_, cols_, free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    k.at(free_cols[j], j) = F.one();
    for (std::size_t i = 0; i < pivot_cols.size(); ++i)
      k.at(pivot_cols[i], j) = F.neg(a.at(i, free_cols[j]));
  }
  return k;
}

namespace {

std::size_t bareiss_rank(std::vector<std::vector<mpz_class>> a) {
  const std::size_t rows = a.size();
  if (rows == 0) return 0;
  const std::size_t cols = a[0].size();
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[rank], a[piv]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]);
        mpz_divexact(a[r][c].get_mpz_t(), a[r][c].get_mpz_t(), prev.get_mpz_t());
      }
      a[r][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t matrix_rank(const ScalarMatrix& m) {
  const Field& F = m.field();
  if (F.kind() == FieldKind::rationals) {
    std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      mpz_class l = 1;
      for (std::size_t c = 0; c < m.cols(); ++c) {
        const mpq_class q = m.at(r, c).rational();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
      }
      for (std::size_t c = 0; c < m.cols(); ++c) {
        const mpq_class q = m.at(r, c).rational() * l;
        a[r][c] = q.get_num();
      }
    }
    return bareiss_rank(std::move(a));
  }
  ScalarMatrix a = m;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t piv = rank;
    while (piv < a.rows() && F.is_zero(a.at(piv, col))) ++piv;
    if (piv == a.rows()) continue;
    for (std::size_t c = col; c < a.cols(); ++c) std::swap(a.at(rank, c), a.at(piv, c));
    const Scalar inv = F.inv(a.at(rank, col));
    for (std::size_t r = rank + 1; r < a.rows(); ++r) {
      if (F.is_zero(a.at(r, col))) continue;
      const Scalar f = F.mul(a.at(r, col), inv);
      for (std::size_t c = col; c < a.cols(); ++c)
        a.at(r, c) = F.sub(a.at(r, c), F.mul(f, a.at(rank, c)));
    }
    ++rank;
  }
  return rank;
}

ScalarMatrix hconcat(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.rows() != b.rows()) throw PreconditionError("hconcat row mismatch");
  ScalarMatrix out(a.field_ptr(), a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out.at(r, c) = a.at(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out.at(r, a.cols() + c) = b.at(r, c);
  }
  return out;
}

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, Poly(ring)) {}

PolyMatrix PolyMatrix::identity(RingPtr ring, std::size_t n) {
  PolyMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Poly::from_int(ring, 1);
  return m;
}

PolyMatrix PolyMatrix::from_columns(RingPtr ring, std::size_t rows,
                                    const std::vector<std::vector<Poly>>& columns) {
  PolyMatrix m(ring, rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw PreconditionError("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = columns[c][r];
  }
  return m;
}

std::vector<Poly> PolyMatrix::column(std::size_t c) const {
  std::vector<Poly> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(at(r, c));
  return out;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(ring_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& other) const {
  if (cols_ != other.rows_)
    throw PreconditionError("matrix shape mismatch: " + std::to_string(rows_) + "x" +
                            std::to_string(cols_) + " times " + std::to_string(other.rows_) + "x" +
                            std::to_string(other.cols_));
  PolyMatrix out(ring_, rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (at(r, k).is_zero()) continue;
      for (std::size_t c = 0; c < other.cols_; ++c)
        if (!other.at(k, c).is_zero()) out.at(r, c) += at(r, k) * other.at(k, c);
    }
  return out;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw PreconditionError("matrix shape mismatch");
  PolyMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
  return out;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw PreconditionError("matrix shape mismatch");
  PolyMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= other.data_[i];
  return out;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool PolyMatrix::is_zero() const {
  for (const auto& p : data_)
    if (!p.is_zero()) return false;
  return true;
}

PolyMatrix PolyMatrix::select_rows(const std::vector<std::size_t>& rows) const {
  PolyMatrix out(ring_, rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) out.at(i, c) = at(rows[i], c);
  return out;
}

PolyMatrix PolyMatrix::select_columns(const std::vector<std::size_t>& cols) const {
  PolyMatrix out(ring_, rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < cols.size(); ++j) out.at(r, j) = at(r, cols[j]);
  return out;
}

ScalarMatrix PolyMatrix::evaluate(const std::vector<Scalar>& point, const Embedding& embedding) const {
  ScalarMatrix out(embedding.target(), rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.at(r, c) = at(r, c).evaluate(point, embedding);
  return out;
}

PolyMatrix PolyMatrix::mapped(RingPtr target, const Embedding& embedding) const {
  PolyMatrix out(target, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i].mapped(target, embedding);
  return out;
}

PolyMatrix PolyMatrix::recast(RingPtr target) const {
  PolyMatrix out(target, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i].recast(target);
  return out;
}

std::vector<std::vector<std::string>> PolyMatrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r].push_back(at(r, c).to_string());
  return out;
}

PolyMatrix block_diagonal(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix out(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out.at(r, c) = a.at(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) out.at(a.rows() + r, a.cols() + c) = b.at(r, c);
  return out;
}

PolyMatrix hconcat(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows()) throw PreconditionError("hconcat row mismatch");
  PolyMatrix out(a.ring(), a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out.at(r, c) = a.at(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out.at(r, a.cols() + c) = b.at(r, c);
  }
  return out;
}

Poly determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Poly::from_int(m.ring(), 1);
  if (n > 32) throw ScopeError("determinant limited to 32x32");
  // Expansion along successive rows, memoized on the used column set.
  std::unordered_map<std::uint32_t, Poly> memo;
  std::function<Poly(std::size_t, std::uint32_t)> rec = [&](std::size_t row, std::uint32_t used) -> Poly {
    if (row == n) return Poly::from_int(m.ring(), 1);
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    Poly acc(m.ring());
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (used & (1u << c)) continue;
      if (!m.at(row, c).is_zero()) {
        Poly sub = rec(row + 1, used | (1u << c));
        if (!sub.is_zero()) {
          Poly term = m.at(row, c) * sub;
          acc = sign > 0 ? acc + term : acc - term;
        }
      }
      sign = -sign;
    }
    memo.emplace(used, acc);
    return acc;
  };
  return rec(0, 0);
}

}  // namespace jumploci
