#pragma once

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jumploci/field.hpp"

namespace jumploci {

enum class MonomialOrder { grlex, lex };

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Polynomial ring k[x_1..x_r] or Laurent ring k[x_1^{+-1}..x_r^{+-1}].
/// The monomial order is only meaningful for ordinary rings; Laurent rings
/// are normalized by monomial shifts instead.
class Ring {
 public:
  static RingPtr make(FieldPtr field, std::vector<std::string> variables, bool laurent,
                      MonomialOrder order = MonomialOrder::grlex);

  const FieldPtr& field_ptr() const { return field_; }
  const Field& field() const { return *field_; }
  std::size_t nvars() const { return variables_.size(); }
  const std::vector<std::string>& variables() const { return variables_; }
  bool laurent() const { return laurent_; }
  MonomialOrder order() const { return order_; }
  std::optional<std::size_t> variable_index(std::string_view name) const;

  RingPtr with_field(FieldPtr field) const;
  RingPtr with_laurent(bool laurent) const;
  /// Appends a new variable (used by the Laurent-to-ordinary bridge).
  RingPtr with_variable(const std::string& name) const;

  std::string describe() const;

  friend bool operator==(const Ring& a, const Ring& b);

 private:
  Ring() = default;
  FieldPtr field_;
  std::vector<std::string> variables_;
  bool laurent_ = false;
  MonomialOrder order_ = MonomialOrder::grlex;
};

bool same_ring(const RingPtr& a, const RingPtr& b);

using Exponents = boost::container::small_vector<std::int32_t, 4>;

/// Total order on exponent vectors; grlex compares total degree first.
int compare_monomials(const Exponents& a, const Exponents& b, MonomialOrder order);
bool divides(const Exponents& a, const Exponents& b);
Exponents monomial_lcm(const Exponents& a, const Exponents& b);

struct Term {
  Exponents exps;
  Scalar coeff;
};

/// Sparse (Laurent) polynomial. Terms are kept sorted by plain lexicographic
/// exponent order with no zero coefficients, so equality is structural.
class Poly {
 public:
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly constant(RingPtr ring, const Scalar& c);
  static Poly from_int(RingPtr ring, long long n);
  static Poly monomial(RingPtr ring, Exponents exps, const Scalar& c);
  static Poly variable(RingPtr ring, std::size_t index);
  /// Builds from unsorted terms, combining duplicates.
  static Poly from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const Field& field() const { return ring_->field(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Ordinary ring: nonzero constant. Laurent ring: one nonzero term.
  bool is_unit() const;
  Scalar constant_coefficient() const;
  Scalar coefficient(const Exponents& exps) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);

  Poly scaled(const Scalar& c) const;
  Poly shifted(const Exponents& exps) const;
  Poly pow(long long e) const;
  /// Inverse of a unit (see is_unit).
  Poly unit_inverse() const;

  int total_degree() const;
  int max_degree(std::size_t var) const;
  int min_degree(std::size_t var) const;
  Exponents min_exponents() const;
  bool has_negative_exponents() const;

  /// Leading term in the ring's monomial order. Requires nonzero.
  const Term& leading_term() const;
  const Term& leading_term(MonomialOrder order) const;

  /// Evaluates at a point whose coordinates live in `embedding.target()`.
  Scalar evaluate(const std::vector<Scalar>& point, const Embedding& embedding) const;

  /// Same exponents, coefficients mapped into another ring with the same
  /// number of variables (or extra trailing variables, padded with zero).
  Poly mapped(RingPtr target, const Embedding& embedding) const;
  Poly recast(RingPtr target) const;

  std::string to_string() const;

 private:
  void normalize();
  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Parser for the canonical textual form: sums of products of integer or
/// rational constants, ring variables and (for extension fields) the field
/// generator `u`, with `^` integer powers and parentheses. Negative powers
/// of variables require a Laurent ring.
Poly parse_poly(const RingPtr& ring, std::string_view text);

/// Laurent normalization: multiply by a monomial so that every variable's
/// minimal exponent is 0. The zero polynomial is returned unchanged.
Poly laurent_normalize(const Poly& f);
/// Monic normalization: laurent_normalize (Laurent rings), then divide by the
/// leading coefficient in the ring order.
Poly normalize_associate(const Poly& f);

// Univariate helpers over an ordinary (non-negative exponent) one-variable
// representation. Laurent inputs must already be normalized.
int univariate_degree(const Poly& f);
Scalar univariate_leading(const Poly& f);
std::pair<Poly, Poly> univariate_divmod(const Poly& a, const Poly& b);
Poly univariate_gcd(Poly a, Poly b);

}  // namespace jumploci
