#include "jumploci/smith.hpp"

#include <utility>

#include "jumploci/errors.hpp"

namespace jumploci {

namespace {

class SmithState {
 public:
  explicit SmithState(const PolyMatrix& a)
      : R_(a.ring()),
        A_(a),
        U_(PolyMatrix::identity(R_, a.rows())),
        V_(PolyMatrix::identity(R_, a.cols())),
        Vi_(PolyMatrix::identity(R_, a.cols())) {}

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < A_.cols(); ++c) std::swap(A_.at(i, c), A_.at(j, c));
    for (std::size_t c = 0; c < U_.cols(); ++c) std::swap(U_.at(i, c), U_.at(j, c));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < A_.rows(); ++r) std::swap(A_.at(r, i), A_.at(r, j));
    for (std::size_t r = 0; r < V_.rows(); ++r) std::swap(V_.at(r, i), V_.at(r, j));
    for (std::size_t c = 0; c < Vi_.cols(); ++c) std::swap(Vi_.at(i, c), Vi_.at(j, c));
  }

  // row_i -= q * row_j
  void row_sub(std::size_t i, std::size_t j, const Poly& q) {
    if (q.is_zero()) return;
    for (std::size_t c = 0; c < A_.cols(); ++c)
      if (!A_.at(j, c).is_zero()) A_.at(i, c) -= q * A_.at(j, c);
    for (std::size_t c = 0; c < U_.cols(); ++c)
      if (!U_.at(j, c).is_zero()) U_.at(i, c) -= q * U_.at(j, c);
  }

  // col_i -= q * col_j; the inverse picks up row_j += q * row_i.
  void col_sub(std::size_t i, std::size_t j, const Poly& q) {
    if (q.is_zero()) return;
    for (std::size_t r = 0; r < A_.rows(); ++r)
      if (!A_.at(r, j).is_zero()) A_.at(r, i) -= q * A_.at(r, j);
    for (std::size_t r = 0; r < V_.rows(); ++r)
      if (!V_.at(r, j).is_zero()) V_.at(r, i) -= q * V_.at(r, j);
    for (std::size_t c = 0; c < Vi_.cols(); ++c)
      if (!Vi_.at(i, c).is_zero()) Vi_.at(j, c) += q * Vi_.at(i, c);
  }

  void scale_row(std::size_t i, const Poly& unit) {
    for (std::size_t c = 0; c < A_.cols(); ++c) A_.at(i, c) = A_.at(i, c) * unit;
    for (std::size_t c = 0; c < U_.cols(); ++c) U_.at(i, c) = U_.at(i, c) * unit;
  }

  // Laurent rings: make every row polynomial with a term of exponent 0.
  void clear_row_denominators() {
    for (std::size_t r = 0; r < A_.rows(); ++r) {
      bool any = false;
      int low = 0;
      for (std::size_t c = 0; c < A_.cols(); ++c) {
        const Poly& e = A_.at(r, c);
        if (e.is_zero()) continue;
        const int m = e.min_degree(0);
        low = any ? std::min(low, m) : m;
        any = true;
      }
      if (any && low != 0) scale_row(r, Poly::monomial(R_, Exponents{-low}, R_->field().one()));
    }
  }

  void run() {
    if (R_->laurent()) clear_row_denominators();
    const std::size_t n = std::min(A_.rows(), A_.cols());
    for (std::size_t k = 0; k < n; ++k) {
      if (!place_pivot(k)) break;
      for (;;) {
        bool dirty = false;
        for (std::size_t r = k + 1; r < A_.rows(); ++r) {
          if (A_.at(r, k).is_zero()) continue;
          auto [q, rem] = univariate_divmod(A_.at(r, k), A_.at(k, k));
          row_sub(r, k, q);
          if (!rem.is_zero()) dirty = true;
        }
        for (std::size_t c = k + 1; c < A_.cols(); ++c) {
          if (A_.at(k, c).is_zero()) continue;
          auto [q, rem] = univariate_divmod(A_.at(k, c), A_.at(k, k));
          col_sub(c, k, q);
          if (!rem.is_zero()) dirty = true;
        }
        if (dirty) {
          place_pivot(k);
          continue;
        }
        // Row and column k are clear; enforce divisibility of the rest.
        std::size_t bad_row = A_.rows();
        for (std::size_t r = k + 1; r < A_.rows() && bad_row == A_.rows(); ++r)
          for (std::size_t c = k + 1; c < A_.cols(); ++c)
            if (!A_.at(r, c).is_zero() && !univariate_divmod(A_.at(r, c), A_.at(k, k)).second.is_zero()) {
              bad_row = r;
              break;
            }
        if (bad_row == A_.rows()) break;
        row_sub(k, bad_row, Poly::from_int(R_, -1));
      }
    }
  }

  SmithForm finish() {
    SmithForm out{U_, A_, V_, Vi_, {}, 0};
    const Field& F = R_->field();
    const std::size_t n = std::min(A_.rows(), A_.cols());
    for (std::size_t k = 0; k < n; ++k) {
      Poly d = out.D.at(k, k);
      if (!d.is_zero()) {
        // Normalize by a unit c * t^e, applied on the U side.
        Poly unit = Poly::monomial(R_, Exponents{0}, F.inv(univariate_leading(d)));
        if (R_->laurent()) {
          const int low = d.min_degree(0);
          if (low != 0) unit = unit * Poly::monomial(R_, Exponents{-low}, F.one());
        }
        for (std::size_t c = 0; c < out.U.cols(); ++c) out.U.at(k, c) = out.U.at(k, c) * unit;
        out.D.at(k, k) = d * unit;
        ++out.rank;
      }
      out.divisors.push_back(out.D.at(k, k));
    }
    return out;
  }

 private:
  // Moves a nonzero entry of minimal degree in the trailing block to (k, k).
  bool place_pivot(std::size_t k) {
    int best = -1;
    std::size_t br = 0, bc = 0;
    for (std::size_t r = k; r < A_.rows(); ++r)
      for (std::size_t c = k; c < A_.cols(); ++c) {
        const Poly& e = A_.at(r, c);
        if (e.is_zero()) continue;
        const int deg = univariate_degree(e);
        if (best < 0 || deg < best) {
          best = deg;
          br = r;
          bc = c;
        }
      }
    if (best < 0) return false;
    swap_rows(k, br);
    swap_cols(k, bc);
    return true;
  }

  RingPtr R_;
  PolyMatrix A_, U_, V_, Vi_;
};

}  // namespace

SmithForm smith_normal_form(const PolyMatrix& a) {
  if (a.ring()->nvars() != 1)
    throw ScopeError("Smith normal form needs a univariate ring, got " + a.ring()->describe());
  SmithState state(a);
  state.run();
  return state.finish();
}

}  // namespace jumploci
