#include "jumploci/equiv.hpp"

#include <numeric>

#include "jumploci/errors.hpp"

namespace jumploci {

void FinAbGroup::validate() const {
  for (std::size_t j = 0; j < torsion.size(); ++j) {
    if (torsion[j] < 2) throw PreconditionError("invariant factors must be at least 2");
    if (j > 0 && torsion[j] % torsion[j - 1] != 0)
      throw PreconditionError("invariant factors must divide each other: " + std::to_string(torsion[j - 1]) +
                              " does not divide " + std::to_string(torsion[j]));
  }
}

std::string FinAbGroup::describe() const {
  std::string s;
  if (rank > 0) s = rank == 1 ? "Z" : "Z^" + std::to_string(rank);
  for (auto n : torsion) s += (s.empty() ? "" : " + ") + std::string("Z/") + std::to_string(n);
  return s.empty() ? "0" : s;
}

bool GrRingDescriptor::has_nilpotents() const {
  for (const auto& n : nilpotent)
    if (n.truncated && n.exponent > 1) return true;
  return false;
}

std::string GrRingDescriptor::describe() const {
  std::string s = sbar->describe();
  for (std::size_t j = 0; j < nilpotent.size(); ++j) {
    const auto& n = nilpotent[j];
    if (!n.truncated) continue;
    const std::string y = "y" + std::to_string(j + 1);
    s += " (x) " + field->name() + "[" + y + "]/(" + y + "^" + std::to_string(n.exponent) + ")";
  }
  return s;
}

GrRingDescriptor gr_ring(const FinAbGroup& g, const FieldPtr& field) {
  g.validate();
  GrRingDescriptor out;
  out.group = g;
  out.field = field;
  std::vector<std::string> vars;
  for (std::size_t j = 0; j < g.rank; ++j) vars.push_back("x" + std::to_string(j + 1));
  out.sbar = Ring::make(field, vars, false);
  const long long p = field->characteristic();
  for (auto n : g.torsion) {
    NilpotentPart part;
    part.order = n;
    if (p > 0 && n % p == 0) {
      part.truncated = true;
      long long pp = 1, rest = n;
      while (rest % p == 0) {
        rest /= p;
        pp *= p;
      }
      part.exponent = pp;
    }
    out.nilpotent.push_back(part);
  }
  return out;
}

NuData NuData::identity(std::size_t n) {
  NuData nu;
  nu.source_rank = n;
  nu.target.rank = n;
  nu.free.assign(n, std::vector<long long>(n, 0));
  for (std::size_t j = 0; j < n; ++j) nu.free[j][j] = 1;
  return nu;
}

namespace {

mpz_class bareiss_det(std::vector<std::vector<mpz_class>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]);
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace

bool NuData::is_surjective() const {
  // Columns of [[F, 0], [T, diag(n)]] must span Z^{r+s}: the gcd of the
  // maximal minors is 1.
  const std::size_t r = target.rank, s = target.torsion.size();
  const std::size_t rows = r + s, cols = source_rank + s;
  if (rows == 0) return true;
  if (cols < rows) return false;
  std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols, 0));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < source_rank; ++k) m[j][k] = static_cast<long>(free[j][k]);
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t k = 0; k < source_rank; ++k) m[r + j][k] = static_cast<long>(torsion[j][k]);
    m[r + j][source_rank + j] = static_cast<long>(target.torsion[j]);
  }
  mpz_class g = 0;
  std::vector<std::size_t> pick(rows);
  std::iota(pick.begin(), pick.end(), 0);
  for (;;) {
    std::vector<std::vector<mpz_class>> sub(rows, std::vector<mpz_class>(rows));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < rows; ++j) sub[i][j] = m[i][pick[j]];
    mpz_class d = bareiss_det(std::move(sub));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    if (g == 1) return true;
    // Next combination.
    std::size_t k = rows;
    while (k > 0 && pick[k - 1] == cols - rows + k - 1) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t j = k; j < rows; ++j) pick[j] = pick[j - 1] + 1;
  }
  return g == 1;
}

void NuData::validate() const {
  target.validate();
  if (free.size() != target.rank)
    throw PreconditionError("nu: free block has " + std::to_string(free.size()) + " rows, target rank is " +
                            std::to_string(target.rank));
  if (torsion.size() != target.torsion.size())
    throw PreconditionError("nu: torsion block has " + std::to_string(torsion.size()) + " rows, target has " +
                            std::to_string(target.torsion.size()) + " torsion factors");
  for (const auto& row : free)
    if (row.size() != source_rank) throw PreconditionError("nu: free block rows need " + std::to_string(source_rank) + " entries");
  for (const auto& row : torsion)
    if (row.size() != source_rank)
      throw PreconditionError("nu: torsion block rows need " + std::to_string(source_rank) + " entries");
  if (!is_surjective()) throw PreconditionError("nu is not surjective onto " + target.describe());
}

ScalarMatrix NuData::nu_bar(const FieldPtr& field) const {
  ScalarMatrix m(field, target.rank, source_rank);
  for (std::size_t j = 0; j < target.rank; ++j)
    for (std::size_t k = 0; k < source_rank; ++k) m.at(j, k) = field->from_int(free[j][k]);
  return m;
}

Vec NuData::pullback(const Coords& w, const FieldPtr& field) const {
  if (w.size() != target.rank) throw PreconditionError("point dimension does not match the target rank");
  Vec a(source_rank, field->zero());
  for (std::size_t k = 0; k < source_rank; ++k)
    for (std::size_t j = 0; j < target.rank; ++j)
      a[k] = field->add(a[k], field->mul(field->from_int(free[j][k]), w[j]));
  return a;
}

ScalarMatrix comultiplication(const GradedAlgebra& A, int i) {
  const std::size_t b1 = A.dim(1), prev = A.dim(i - 1), cur = A.dim(i);
  ScalarMatrix out(A.field_ptr(), b1 * prev, cur);
  if (i < 1 || cur == 0) return out;
  for (std::size_t k = 0; k < b1; ++k)
    for (std::size_t c = 0; c < prev; ++c) {
      const Vec p = A.basis_product(1, k, i - 1, c);
      for (std::size_t b = 0; b < cur; ++b) out.at(k * prev + c, b) = p[b];
    }
  return out;
}

FreeChainComplex build_E1(const GradedAlgebra& A, const NuData& nu) {
  const CgaVerdict v = validate_cga(A);
  if (!v.valid) throw PreconditionError("invalid cga: " + v.message);
  nu.validate();
  if (nu.source_rank != A.dim(1))
    throw PreconditionError("nu has source rank " + std::to_string(nu.source_rank) + " but dim A^1 = " +
                            std::to_string(A.dim(1)));
  const GrRingDescriptor gr = gr_ring(nu.target, A.field_ptr());
  const RingPtr& S = gr.sbar;
  const std::size_t r = nu.target.rank, b1 = A.dim(1);
  // Image of the k-th basis element of H_1 in S: sum_j N_jk x_j.
  std::vector<Poly> image;
  for (std::size_t k = 0; k < b1; ++k) {
    Poly f(S);
    for (std::size_t j = 0; j < r; ++j)
      if (nu.free[j][k] != 0) f += Poly::variable(S, j).scaled(A.field().from_int(nu.free[j][k]));
    image.push_back(f);
  }
  std::vector<std::size_t> ranks(A.dims().begin(), A.dims().end());
  std::vector<PolyMatrix> ds;
  for (int i = 1; i <= A.top_degree(); ++i) {
    const ScalarMatrix nabla = comultiplication(A, i);
    const std::size_t prev = A.dim(i - 1), cur = A.dim(i);
    PolyMatrix d(S, prev, cur);
    for (std::size_t b = 0; b < cur; ++b)
      for (std::size_t k = 0; k < b1; ++k)
        for (std::size_t c = 0; c < prev; ++c) {
          const Scalar& coeff = nabla.at(k * prev + c, b);
          if (!A.field().is_zero(coeff)) d.at(c, b) += image[k].scaled(coeff);
        }
    ds.push_back(std::move(d));
  }
  FreeChainComplex e(S, ranks, ds);
  const ComplexVerdict check = validate_complex(e);
  if (!check.valid)
    throw PreconditionError("E^1 is not a complex (" + check.message +
                            "); squares of pulled-back degree-1 classes do not vanish");
  return e;
}

CvResReport verify_cv_res(const GradedAlgebra& A, const NuData& nu, int i, long d, const FieldPtr& field,
                          const EnumerationLimits& limits) {
  const FreeChainComplex e = build_E1(A, nu);
  CvResReport rep{i, d, jump_locus_points(e, i, d, field, false, limits), PointSet(field, nu.target.rank), false};
  rep.rhs = filter_points(
      field, nu.target.rank, false,
      [&](const Coords& w) { return resonance_member(A, nu.pullback(w, field), i, d, field); }, limits);
  rep.equal = rep.lhs == rep.rhs;
  return rep;
}

namespace {

// Substitutes a_k -> linear[k] into a polynomial over k[a_1..a_b].
Poly substitute(const Poly& f, const std::vector<Poly>& linear, const RingPtr& target) {
  Poly out(target);
  for (const auto& t : f.terms()) {
    Poly m = Poly::constant(target, t.coeff);
    for (std::size_t k = 0; k < t.exps.size(); ++k)
      if (t.exps[k] > 0) m *= linear[k].pow(t.exps[k]);
    out += m;
  }
  return out;
}

bool is_origin(const Field& F, const Coords& w) {
  for (const auto& x : w)
    if (!F.is_zero(x)) return false;
  return true;
}

}  // namespace

FinitenessReport finiteness_test(const GradedAlgebra& A, const NuData& nu, int k, const FieldPtr& field,
                                 const FinitenessOptions& options) {
  if (k < 0 || k > A.top_degree())
    throw PreconditionError("k = " + std::to_string(k) + " exceeds the top degree " + std::to_string(A.top_degree()));
  const FreeChainComplex e = build_E1(A, nu);
  const std::size_t r = nu.target.rank;
  FinitenessReport rep{k, false, PointSet(field, r), "skipped", "", {}, false, ""};
  rep.nilpotents_discarded = gr_ring(nu.target, A.field_ptr()).has_nilpotents();

  rep.offending = filter_points(
      field, r, false,
      [&](const Coords& w) {
        if (is_origin(*field, w)) return false;
        const Vec a = nu.pullback(w, field);
        for (int i = 0; i <= k; ++i)
          if (resonance_member(A, a, i, 1, field)) return true;
        return false;
      },
      options.enumeration);
  rep.hypothesis_holds = rep.offending.empty();

  if (options.symbolic) {
    // V(J_i) in {0} for the pulled-back resonance ideals J_i iff k[x]/J_i
    // is finite-dimensional.
    const RingPtr& S = e.ring();
    std::vector<Poly> linear;
    for (std::size_t m = 0; m < A.dim(1); ++m) {
      Poly f(S);
      for (std::size_t j = 0; j < r; ++j)
        if (nu.free[j][m] != 0) f += Poly::variable(S, j).scaled(A.field().from_int(nu.free[j][m]));
      linear.push_back(f);
    }
    rep.symbolic = "holds";
    try {
      for (int i = 0; i <= k && rep.symbolic == "holds"; ++i) {
        const Ideal I = resonance_ideal(A, i, 1);
        std::vector<std::vector<Poly>> cols;
        for (const auto& g : I.generators()) {
          Poly p = substitute(g, linear, S);
          if (!p.is_zero()) cols.push_back({p});
        }
        if (r == 0) continue;
        if (cols.empty()) {
          rep.symbolic = "fails";
          rep.symbolic_detail = "pulled-back resonance ideal in degree " + std::to_string(i) + " is zero";
          break;
        }
        const auto dim = quotient_dimension(submodule_basis(PolyMatrix::from_columns(S, 1, cols), options.limits));
        if (!dim) {
          rep.symbolic = "fails";
          rep.symbolic_detail = "pulled-back resonance ideal in degree " + std::to_string(i) +
                                " has a positive-dimensional zero set";
        }
      }
    } catch (const ScopeError& err) {
      rep.symbolic = "unknown";
      rep.symbolic_detail = err.what();
    }
  }

  if (!rep.hypothesis_holds) {
    rep.conclusion =
        "inconclusive: the image of nu_bar^* meets the resonance varieties away from 0, and the finiteness "
        "criterion is only a sufficient condition";
    return rep;
  }
  bool all_in_origin = true;
  for (int i = 0; i <= k; ++i) {
    FinitenessDegree deg{i, support_points(e, i, 1, field, false, options.limits, options.enumeration), false, {}};
    deg.support_in_origin = true;
    for (const auto& w : deg.support.points())
      if (!is_origin(*field, w)) deg.support_in_origin = false;
    all_in_origin = all_in_origin && deg.support_in_origin;
    deg.dimension = is_finite_dimensional(homology_presentation(e, i, options.limits), options.limits);
    rep.degrees.push_back(std::move(deg));
  }
  rep.conclusion = all_in_origin ? "E^2 is supported at the origin in degrees <= " + std::to_string(k) +
                                       "; the completed homology is finite-dimensional in those degrees"
                                 : "E^2 support leaves the origin although the hypothesis holds; this indicates an "
                                   "implementation fault";
  return rep;
}

}  // namespace jumploci
