#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "jumploci/groebner.hpp"
#include "jumploci/ideal.hpp"
#include "jumploci/matrix.hpp"
#include "jumploci/points.hpp"

namespace jumploci {

/// Module with `generators` generators and the columns of `relations`
/// (generators x m) as relations.
struct ModulePresentation {
  RingPtr ring;
  std::size_t generators = 0;
  PolyMatrix relations;

  ModulePresentation(RingPtr r, std::size_t g) : ring(r), generators(g), relations(r, g, 0) {}
  ModulePresentation(RingPtr r, std::size_t g, PolyMatrix rel)
      : ring(std::move(r)), generators(g), relations(std::move(rel)) {}
};

/// Free complex 0 <- S^{c_0} <-d_1- S^{c_1} <- ... <-d_n- S^{c_n} <- 0.
class FreeChainComplex {
 public:
  /// differentials[k] is d_{k+1}, of shape c_k x c_{k+1}. Throws
  /// PreconditionError on a shape mismatch.
  FreeChainComplex(RingPtr ring, std::vector<std::size_t> ranks, std::vector<PolyMatrix> differentials);

  const RingPtr& ring() const { return ring_; }
  /// Index of the top nonzero term slot (ranks.size() - 1).
  int length() const { return static_cast<int>(ranks_.size()) - 1; }
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  std::size_t rank(int i) const;
  /// d_i : S^{c_i} -> S^{c_{i-1}}; the zero map of the right shape outside 1..n.
  PolyMatrix differential(int i) const;
  const std::vector<PolyMatrix>& differentials() const { return d_; }

 private:
  RingPtr ring_;
  std::vector<std::size_t> ranks_;
  std::vector<PolyMatrix> d_;
};

/// Complex of presented modules: term i is coker(R_i) on g_i generators and
/// D_i maps generators of term i to generators of term i-1.
class PresentedChainComplex {
 public:
  PresentedChainComplex(RingPtr ring, std::vector<ModulePresentation> terms, std::vector<PolyMatrix> differentials);

  const RingPtr& ring() const { return ring_; }
  int length() const { return static_cast<int>(terms_.size()) - 1; }
  const std::vector<ModulePresentation>& terms() const { return terms_; }
  std::size_t generators(int i) const;
  PolyMatrix relations(int i) const;
  PolyMatrix differential(int i) const;
  const std::vector<PolyMatrix>& differentials() const { return d_; }

  /// The same complex with no relations is free; this view is used when all
  /// relation blocks are empty.
  bool is_free() const;
  FreeChainComplex as_free() const;
  static PresentedChainComplex from_free(const FreeChainComplex& e);

 private:
  RingPtr ring_;
  std::vector<ModulePresentation> terms_;
  std::vector<PolyMatrix> d_;
};

struct ComplexVerdict {
  bool valid = true;
  /// False when some check could only be decided up to resource limits.
  bool conclusive = true;
  int index = 0;  // i with d_i * d_{i+1} != 0
  std::size_t row = 0, col = 0;
  std::string composite;
  std::string message;
};

ComplexVerdict validate_complex(const FreeChainComplex& e);
/// Checks D_i R_i lands in im R_{i-1} and D_{i-1} D_i lands in im R_{i-2},
/// by module membership (Gröbner, within limits).
ComplexVerdict validate_complex(const PresentedChainComplex& e, const GroebnerLimits& limits = {});

/// Matrices over a field; differentials[k] is d_{k+1}.
struct SpecializedComplex {
  FieldPtr field;
  std::vector<std::size_t> ranks;
  std::vector<ScalarMatrix> differentials;

  std::vector<std::size_t> homology_dims() const;
};

/// E (x) S/m_w: entrywise evaluation at the point w, coordinates in `field`.
SpecializedComplex specialize(const FreeChainComplex& e, const Coords& w, const FieldPtr& field);

/// dim_k H_i(E (x) S/m_w) for i = 0..n.
std::vector<std::size_t> homology_dims_at_point(const FreeChainComplex& e, const Coords& w, const FieldPtr& field);
/// Presented terms are specialized as cokernels of their evaluated
/// relations; induced maps are computed on the quotients.
std::vector<std::size_t> homology_dims_at_point(const PresentedChainComplex& e, const Coords& w,
                                                const FieldPtr& field);

/// Ideal of minors of size c_i - d + 1 of d_{i+1} (+) d_i. d <= 0 gives the
/// zero ideal; c_i < d gives the unit ideal.
Ideal jump_locus_ideal(const FreeChainComplex& e, int i, long d);
/// Always throws PreconditionError: the determinantal description needs free terms.
Ideal jump_locus_ideal(const PresentedChainComplex& e, int i, long d);

PointSet jump_locus_points(const FreeChainComplex& e, int i, long d, const FieldPtr& field, bool torus,
                           const EnumerationLimits& limits = {});
PointSet jump_locus_points(const PresentedChainComplex& e, int i, long d, const FieldPtr& field, bool torus,
                           const EnumerationLimits& limits = {});

/// Removes generators killed by unit relations, zero relations and
/// duplicate relation columns.
ModulePresentation prune_presentation(const ModulePresentation& p);

/// Presentation of H_i. Univariate Laurent free complexes go through the
/// Smith form (result is diagonal); everything else through syzygies.
ModulePresentation homology_presentation(const FreeChainComplex& e, int i, const GroebnerLimits& limits = {});
ModulePresentation homology_presentation(const PresentedChainComplex& e, int i,
                                         const GroebnerLimits& limits = {});

/// Ideal of (g - j)-minors of the relations; unit ideal when j >= g.
Ideal fitting_ideal(const ModulePresentation& p, long j);

/// dim(coker relations(w)) at a point.
std::size_t fiber_dimension(const ModulePresentation& p, const Coords& w, const FieldPtr& field);

/// Zero locus of Fitt_{d-1}(H_i(E)).
PointSet support_points(const FreeChainComplex& e, int i, long d, const FieldPtr& field, bool torus,
                        const GroebnerLimits& glimits = {}, const EnumerationLimits& limits = {});
PointSet support_points(const PresentedChainComplex& e, int i, long d, const FieldPtr& field, bool torus,
                        const GroebnerLimits& glimits = {}, const EnumerationLimits& limits = {});

struct FinitenessVerdict {
  enum class Kind { finite, infinite, unknown } kind = Kind::unknown;
  std::uint64_t dimension = 0;
  std::string method;
  std::string reason;  // set for unknown

  std::string describe() const;
};

FinitenessVerdict is_finite_dimensional(const ModulePresentation& p, const GroebnerLimits& limits = {});

struct RandomComplexOptions {
  std::size_t length = 2;  // number of differentials
  std::size_t max_rank = 4;
  int max_degree = 3;
  double density = 0.5;
};

/// Seeded random free complex: d_1 is sampled with sparse entries, each
/// further d_{k+1} is a random combination of kernel generators of d_k.
FreeChainComplex random_free_complex(const RingPtr& ring, const RandomComplexOptions& options, std::uint64_t seed,
                                     const GroebnerLimits& limits = {});

/// Random polynomial with entries of degree <= max_degree (exponents in
/// [-max_degree/2, max_degree] for Laurent rings).
Poly random_poly(const RingPtr& ring, int max_degree, double density, std::mt19937_64& rng);

}  // namespace jumploci
