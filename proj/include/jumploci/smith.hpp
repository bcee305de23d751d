#pragma once

#include <vector>

#include "jumploci/matrix.hpp"

namespace jumploci {

/// U * A * V = D with D diagonal, d_1 | d_2 | ..., U and V invertible over
/// the ring. Over k[t^+-1] the divisors are monic with lowest exponent 0.
struct SmithForm {
  PolyMatrix U, D, V, V_inverse;
  /// Diagonal of D, length min(rows, cols); zeros trail.
  std::vector<Poly> divisors;
  std::size_t rank = 0;
};

/// Smith normal form over a univariate ring k[t] or k[t^+-1].
SmithForm smith_normal_form(const PolyMatrix& a);

}  // namespace jumploci
