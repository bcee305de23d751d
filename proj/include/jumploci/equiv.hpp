#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jumploci/cga.hpp"
#include "jumploci/complex.hpp"

namespace jumploci {

/// Z^rank + Z/n_1 + ... + Z/n_s with n_1 | n_2 | ... and every n_j >= 2.
struct FinAbGroup {
  std::size_t rank = 0;
  std::vector<long long> torsion;

  /// Throws PreconditionError unless the invariant factors form a chain.
  void validate() const;
  std::string describe() const;
  friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;
};

struct NilpotentPart {
  long long order = 0;      // n_j
  bool truncated = false;   // char k divides n_j
  long long exponent = 0;   // N in k[x]/(x^N), the p-part of n_j
};

/// Associated graded ring of kG for the augmentation filtration: the
/// polynomial ring k[x_1..x_r] for the free part, tensored with one factor
/// per torsion coefficient that is k when char k does not divide n_j and
/// the truncated ring k[y]/(y^N) otherwise.
struct GrRingDescriptor {
  FinAbGroup group;
  FieldPtr field;
  RingPtr sbar;
  std::vector<NilpotentPart> nilpotent;

  bool has_nilpotents() const;
  /// Every torsion factor contributes a single point, so specm is F^r.
  std::size_t specm_dimension() const { return group.rank; }
  std::string describe() const;
};

GrRingDescriptor gr_ring(const FinAbGroup& g, const FieldPtr& field);

/// Homomorphism Z^{b_1} -> G: `free` is rank x b_1, `torsion` is s x b_1
/// (entries read mod n_j).
struct NuData {
  std::size_t source_rank = 0;
  FinAbGroup target;
  std::vector<std::vector<long long>> free;
  std::vector<std::vector<long long>> torsion;

  static NuData identity(std::size_t n);
  /// Shapes, and surjectivity onto the target (checked over Z).
  void validate() const;
  bool is_surjective() const;
  /// nu_bar_* : k^{b_1} -> k^r, the free block reduced into `field`.
  ScalarMatrix nu_bar(const FieldPtr& field) const;
  /// nu_bar^*(w) = nu_bar^T w.
  Vec pullback(const Coords& w, const FieldPtr& field) const;
};

/// Comultiplication component H_i -> H_1 (x) H_{i-1} as the transpose of
/// the multiplication A^1 x A^{i-1} -> A^i: rows indexed by (k, c) with
/// k in A^1 and c in A^{i-1}, columns by the basis of H_i.
ScalarMatrix comultiplication(const GradedAlgebra& A, int i);

/// First page E^1 over k[x_1..x_r]: ranks b_i, and d^1_i the composite of
/// comultiplication and nu_bar_* (x) id, with x_j the free coordinates.
FreeChainComplex build_E1(const GradedAlgebra& A, const NuData& nu);

struct CvResReport {
  int i = 0;
  long d = 0;
  PointSet lhs, rhs;
  bool equal = false;
};

/// lhs: jump locus of E^1 over F^r; rhs: w with nu_bar^*(w) resonant.
CvResReport verify_cv_res(const GradedAlgebra& A, const NuData& nu, int i, long d, const FieldPtr& field,
                          const EnumerationLimits& limits = {});

struct FinitenessOptions {
  bool symbolic = true;  // confirm the hypothesis through resonance ideals
  GroebnerLimits limits;
  EnumerationLimits enumeration;
};

struct FinitenessDegree {
  int i = 0;
  PointSet support;
  bool support_in_origin = false;
  FinitenessVerdict dimension;
};

struct FinitenessReport {
  int k = 0;
  bool hypothesis_holds = false;
  /// Nonzero w with nu_bar^*(w) in some R^i_1, i <= k.
  PointSet offending;
  /// "holds", "fails" or "unknown" over the algebraic closure (symbolic).
  std::string symbolic;
  std::string symbolic_detail;
  std::vector<FinitenessDegree> degrees;
  bool nilpotents_discarded = false;
  std::string conclusion;
};

FinitenessReport finiteness_test(const GradedAlgebra& A, const NuData& nu, int k, const FieldPtr& field,
                                 const FinitenessOptions& options = {});

}  // namespace jumploci
