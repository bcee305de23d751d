#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "jumploci/field.hpp"
#include "jumploci/ideal.hpp"
#include "jumploci/matrix.hpp"
#include "jumploci/points.hpp"

namespace jumploci {

using Vec = std::vector<Scalar>;

/// Finite-dimensional graded algebra A^0 + ... + A^n given by structure
/// constants on fixed ordered bases. Products not set explicitly are zero,
/// except that the basis element of A^0 acts as the identity unless a
/// degree-0 product is given.
class GradedAlgebra {
 public:
  GradedAlgebra(FieldPtr field, std::vector<std::size_t> dims);

  const FieldPtr& field_ptr() const { return field_; }
  const Field& field() const { return *field_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  int top_degree() const { return static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int i) const;

  /// e^i_a * e^j_b = value (a vector in A^{i+j}).
  void set_product(int i, int j, std::size_t a, std::size_t b, Vec value);
  /// Product of basis elements; zero above the top degree.
  Vec basis_product(int i, std::size_t a, int j, std::size_t b) const;
  Vec multiply(int i, const Vec& x, int j, const Vec& y) const;

  using Key = std::tuple<int, int, std::size_t, std::size_t>;
  /// Explicitly set products (canonical order).
  const std::map<Key, Vec>& entries() const { return mult_; }

  friend bool operator==(const GradedAlgebra& a, const GradedAlgebra& b);

 private:
  FieldPtr field_;
  std::vector<std::size_t> dims_;
  std::map<Key, Vec> mult_;
};

struct CgaVerdict {
  bool valid = true;
  std::string rule;  // "shape", "unit", "commutativity", "associativity"
  std::vector<std::pair<int, std::size_t>> witness;  // (degree, basis index) list
  std::string message;
};

CgaVerdict validate_cga(const GradedAlgebra& a);

/// delta^i(a): A^i -> A^{i+1}, b |-> a b, for i = 0..n, over `field`
/// (structure constants are embedded). Throws PreconditionError if a^2 != 0.
std::vector<ScalarMatrix> aomoto(const GradedAlgebra& A, const Vec& a, const FieldPtr& field);
/// a^2 in A^2, over `field`.
Vec square(const GradedAlgebra& A, const Vec& a, const FieldPtr& field);

/// dim H^i(A, delta(a)) >= d by the rank formula.
bool resonance_member(const GradedAlgebra& A, const Vec& a, int i, long d, const FieldPtr& field);
/// dim H^i(A, delta(a)) for i = 0..n.
std::vector<std::size_t> aomoto_betti(const GradedAlgebra& A, const Vec& a, const FieldPtr& field);

/// Square-zero a in A^1(F) with dim H^i >= d.
PointSet resonance_points(const GradedAlgebra& A, int i, long d, const FieldPtr& field,
                          const EnumerationLimits& limits = {});
/// Closed under scaling by every nonzero scalar.
bool is_cone(const PointSet& s);

/// Ideal in k[a_1..a_{b_1}]: coordinates of a^2 plus minors of size
/// b_i - d + 1 of delta^{i-1}(a) (+) delta^i(a) with symbolic a.
Ideal resonance_ideal(const GradedAlgebra& A, int i, long d);
/// Symbolic delta^i(a) over k[a_1..a_{b_1}].
PolyMatrix symbolic_aomoto(const GradedAlgebra& A, int i, const RingPtr& ring);
RingPtr resonance_ring(const GradedAlgebra& A);

/// Uniform sample from the parameter space of graded-commutative products on
/// a shape (1, b_1) or (1, b_1, b_2). Odd characteristic: alternating
/// pairings; characteristic 2: symmetric pairings with free squares.
GradedAlgebra sample_cga(const std::vector<std::size_t>& shape, const FieldPtr& field, std::uint64_t seed);

/// (1, b_1, b_2) algebra from a pairing function value(m, l) for m < l;
/// value(m, m) gives squares in characteristic 2.
GradedAlgebra pairing_cga(const FieldPtr& field, std::size_t b1, std::size_t b2,
                          const std::map<std::pair<std::size_t, std::size_t>, Vec>& pairing);

/// True when no nonzero a in A^1 has a A^1 = 0 (degree 1 x 1 -> 2).
bool pairing_nondegenerate(const GradedAlgebra& A);

struct TrialRecord {
  std::uint64_t trial = 0;
  bool in_complement = false;  // C^i_B: some a != 0 in R^i_1
  bool nondegenerate = false;
  std::optional<Vec> witness;
  bool witness_verified = false;
  std::size_t resonance_size = 0;
};

struct ReferenceRecord {
  std::string name;
  bool in_complement = false;
  std::size_t resonance_size = 0;
  bool recomputation_agrees = false;
};

struct GenericVanishingReport {
  std::vector<std::size_t> shape;
  int i = 1;
  std::uint64_t trials = 0, seed = 0;
  std::uint64_t open_count = 0, complement_count = 0;
  std::uint64_t nondegenerate_count = 0, nondegenerate_in_open = 0;
  std::vector<TrialRecord> records;
  std::vector<ReferenceRecord> references;
  double open_fraction() const { return trials ? static_cast<double>(open_count) / static_cast<double>(trials) : 0; }
};

/// Samples `trials` algebras and classifies each into U^i_B (no nonzero
/// resonant a) or its complement. Reference algebras (zero pairing, and the
/// standard pairing when the shape has b_1 = 2, b_2 >= 1) are classified too.
GenericVanishingReport generic_vanishing_experiment(const std::vector<std::size_t>& shape, int i, std::uint64_t trials,
                                                    const FieldPtr& field, std::uint64_t seed);

/// Per-trial seed derived from the experiment seed and the trial counter.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter);

}  // namespace jumploci
