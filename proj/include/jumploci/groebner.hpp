#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "jumploci/ideal.hpp"
#include "jumploci/matrix.hpp"

namespace jumploci {

/// Resource limits for the Buchberger engine. Exceeding any of them raises
/// ScopeError instead of running unbounded.
struct GroebnerLimits {
  std::size_t max_vars = 3;               // ideal inputs
  std::size_t max_generators = 6;         // ideal inputs
  int max_degree = 6;                     // ideal inputs, total degree
  std::size_t max_module_generators = 24; // module inputs (columns)
  std::size_t max_module_vars = 4;
  std::size_t max_basis = 4000;
  int max_working_degree = 40;
};

using ModuleVector = std::vector<Poly>;

/// Gröbner basis of a submodule of R^rank, position-over-term: a vector's
/// leading position is its first nonzero component, compared before terms.
struct ModuleBasis {
  RingPtr ring;
  std::size_t rank = 0;
  std::vector<ModuleVector> elements;
};

/// Generators are the columns of `gens`. Ordinary polynomial rings only.
ModuleBasis module_groebner(const PolyMatrix& gens, const GroebnerLimits& limits = {});

/// Remainder of v after top-reduction by the basis (zero iff v lies in the
/// submodule).
ModuleVector module_reduce(const ModuleBasis& basis, ModuleVector v);
bool module_contains(const ModuleBasis& basis, const ModuleVector& v);

/// Number of standard monomials of R^rank / M, or nullopt when infinite.
std::optional<std::uint64_t> standard_monomial_count(const ModuleBasis& basis);

/// Reduced Gröbner basis of an ideal of an ordinary polynomial ring.
Ideal buchberger(const Ideal& ideal, const GroebnerLimits& limits = {});
/// Full remainder of f modulo a Gröbner basis.
Poly reduce(const Poly& f, const std::vector<Poly>& basis);
bool ideal_contains(const Ideal& groebner_basis, const Poly& f);
/// S-polynomial of two nonzero polynomials in the ring order.
Poly s_polynomial(const Poly& f, const Poly& g);

/// Columns generate {v : M v = 0}. Laurent rings are handled by clearing
/// denominators column-wise and computing over the polynomial ring.
PolyMatrix syzygy_matrix(const PolyMatrix& m, const GroebnerLimits& limits = {});

/// Submodule of R^rank generated by columns, over an ordinary or a Laurent
/// ring. Laurent inputs are computed over k[t_1..t_r, z] with the extra
/// relations (z t_1...t_r - 1) e_p, which presents the localization.
struct SubmoduleBasis {
  RingPtr source;
  bool bridged = false;
  ModuleBasis basis;
};

SubmoduleBasis submodule_basis(const PolyMatrix& gens, const GroebnerLimits& limits = {});
bool submodule_contains(const SubmoduleBasis& m, const ModuleVector& v);
/// dim_k of R^rank / M, or nullopt when infinite.
std::optional<std::uint64_t> quotient_dimension(const SubmoduleBasis& m);

}  // namespace jumploci
