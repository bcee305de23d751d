#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace jumploci {

/// A field element. Finite-field elements are stored as a code in
/// [0, q): the base-p digits of the code are the coefficients of the element
/// written as a polynomial in the field generator u. Rationals are stored
/// exactly. A Scalar carries no reference to its field; all arithmetic goes
/// through a Field.
class Scalar {
 public:
  Scalar() = default;
  static Scalar from_code(std::int64_t code) { return Scalar(code); }
  static Scalar from_rational(mpq_class value) { return Scalar(std::move(value)); }

  bool is_rational() const { return std::holds_alternative<mpq_class>(value_); }
  std::int64_t code() const;
  mpq_class rational() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  explicit Scalar(std::int64_t code) : value_(code) {}
  explicit Scalar(mpq_class value) : value_(std::move(value)) {}

  std::variant<std::int64_t, mpq_class> value_{std::int64_t{0}};
};

enum class FieldKind { rationals, prime, extension };

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Ground field: Q, F_p, or F_{p^m} = F_p[u]/(modulus).
class Field {
 public:
  static FieldPtr rationals();
  static FieldPtr prime(std::int64_t p);
  /// F_{p^m} with the first monic irreducible modulus in a fixed search order
  /// (coefficient vectors read as base-p integers, ascending).
  static FieldPtr extension(std::int64_t p, int m);
  /// F_{p^m} with a user-supplied monic modulus, coefficients low-to-high.
  static FieldPtr extension(std::int64_t p, std::vector<std::int64_t> modulus);
  /// F_q for a prime power q, using the default modulus.
  static FieldPtr galois(std::int64_t q);

  FieldKind kind() const { return kind_; }
  std::int64_t characteristic() const { return p_; }
  /// m for F_{p^m}, 1 for F_p, 0 for Q.
  int degree() const { return m_; }
  /// q = p^m, or 0 for Q.
  std::int64_t size() const { return q_; }
  bool is_finite() const { return kind_ != FieldKind::rationals; }
  /// Monic modulus, low-to-high coefficients (extension fields only).
  const std::vector<std::int64_t>& modulus() const { return modulus_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long n) const;
  Scalar from_mpz(const mpz_class& n) const;
  Scalar from_mpq(const mpq_class& a) const;
  /// The field generator u (extension fields only).
  Scalar generator() const;
  /// Element with the given code, 0 <= code < q.
  Scalar element(std::int64_t code) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const;
  Scalar pow(const Scalar& a, long long e) const;
  bool is_zero(const Scalar& a) const;
  bool is_one(const Scalar& a) const;
  bool equal(const Scalar& a, const Scalar& b) const;

  /// Prime fields: the residue 0..p-1. Extensions: polynomial in u.
  /// Rationals: "a" or "a/b".
  std::string format(const Scalar& a) const;
  /// "Q", "GF(5)", "GF(2^2)".
  std::string name() const;

  friend bool operator==(const Field& a, const Field& b);

 private:
  Field() = default;
  void build_tables();
  std::vector<std::int64_t> digits(std::int64_t code) const;
  std::int64_t from_digits(const std::vector<std::int64_t>& d) const;

  FieldKind kind_ = FieldKind::rationals;
  std::int64_t p_ = 0;
  int m_ = 0;
  std::int64_t q_ = 0;
  std::vector<std::int64_t> modulus_;
  // Extension fields: discrete log tables w.r.t. a primitive element.
  std::vector<std::int32_t> exp_;
  std::vector<std::int32_t> log_;
};

bool is_prime(std::int64_t n);
/// True iff the monic polynomial (low-to-high coefficients mod p) is
/// irreducible over F_p.
bool is_irreducible_mod_p(const std::vector<std::int64_t>& poly, std::int64_t p);
/// Returns (p, m) with q = p^m, or throws PreconditionError.
std::pair<std::int64_t, int> prime_power(std::int64_t q);

/// Parses "Q", "GF(p)", "GF(p^m)", "F5", or a bare prime power "25".
FieldPtr parse_field(const std::string& text);

/// Structure-preserving map between fields: identity, Q -> F_p (reduction),
/// or F_{p^m} -> F_{p^n} with m | n (via a root of the source modulus).
class Embedding {
 public:
  Embedding(FieldPtr from, FieldPtr to);

  Scalar operator()(const Scalar& a) const;
  const FieldPtr& source() const { return from_; }
  const FieldPtr& target() const { return to_; }

  static bool exists(const Field& from, const Field& to);

 private:
  FieldPtr from_;
  FieldPtr to_;
  bool identity_ = false;
  std::vector<Scalar> table_;  // finite -> finite
};

}  // namespace jumploci
