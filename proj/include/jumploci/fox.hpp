#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "jumploci/cga.hpp"
#include "jumploci/complex.hpp"
#include "jumploci/equiv.hpp"

namespace jumploci {

struct Letter {
  std::size_t generator = 0;
  int exponent = 1;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

Word free_reduce(const Word& w);
Word inverse(const Word& w);

/// Finitely presented group. Relators are stored freely reduced.
class GroupPresentation {
 public:
  /// Generator names must be identifiers ([A-Za-z][A-Za-z0-9_]*) whose
  /// case-swapped first letter is not another generator.
  GroupPresentation(std::vector<std::string> generators, std::vector<Word> relators);
  /// Parses relator strings with parse_word.
  static GroupPresentation parse(std::vector<std::string> generators, const std::vector<std::string>& relators);

  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<Word>& relators() const { return relators_; }
  std::size_t size() const { return generators_.size(); }
  std::string format(const Word& w) const;
  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;

 private:
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
};

/// Word grammar:
///   relation := word [ '=' word ]          (u = v means u v^-1)
///   word     := { factor [ '*' | '.' ] }   (whitespace between factors ignored)
///   factor   := atom [ '^' integer ]
///   atom     := name | NAME | '1' | '(' word ')' | '[' word ',' word ']'
/// `name` is a generator; NAME, the generator with its first letter's case
/// swapped, is its inverse. Names are matched longest first. [u, v] is
/// u v u^-1 v^-1 and x^-n is (x^-1)^n. The empty string and "1" are the
/// identity. The result is freely reduced.
Word parse_word(const std::vector<std::string>& generators, std::string_view text);

/// Laurent ring k[t^{+-1}] (r = 1) or k[t1^{+-1}..tr^{+-1}].
RingPtr alexander_ring(const FieldPtr& field, std::size_t r);

/// nu(w) in Z^r for nu onto a free abelian target.
std::vector<long long> nu_image(const Word& w, const NuData& nu);
/// t^{nu(w)} in `ring`.
Poly abelianize(const Word& w, const NuData& nu, const RingPtr& ring);

/// Abelianized Fox derivative of w with respect to generator j.
Poly fox_derivative(const Word& w, std::size_t j, const NuData& nu, const RingPtr& ring);

/// C_2 = S^{#relators} -> C_1 = S^{#generators} -> C_0 = S with d_1 the row
/// (t^{nu(g_i)} - 1) and d_2 the abelianized Fox Jacobian (rows generators,
/// columns relators).
FreeChainComplex alexander_complex(const GroupPresentation& p, const NuData& nu, const FieldPtr& field);

/// Characters in (F^x)^r with dim H_i(X, k_rho) >= d.
PointSet characteristic_variety_points(const GroupPresentation& p, const NuData& nu, int i, long d,
                                       const FieldPtr& field, const EnumerationLimits& limits = {});

struct AlexanderInvariant {
  ModulePresentation presentation;
  FinitenessVerdict finiteness;
};

/// H_1 of the Alexander complex and whether it is finite-dimensional over k.
AlexanderInvariant alexander_invariant(const GroupPresentation& p, const NuData& nu, const FieldPtr& field,
                                       const GroebnerLimits& limits = {});

/// Degree-2 Magnus coefficient of X_i X_j in w (x_g -> 1 + X_g).
long long magnus_coefficient(const Word& w, std::size_t i, std::size_t j);

/// Cga of shape (1, n, #relators): e_i e_j = sum_rho c^rho_ij f_rho for i < j,
/// with c^rho_ij the Magnus coefficient. Every relator must have zero
/// exponent sum in each generator.
GradedAlgebra quadratic_cup(const GroupPresentation& p, const FieldPtr& field);

}  // namespace jumploci
