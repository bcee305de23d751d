#include "jumploci/complex.hpp"

#include <algorithm>

#include "jumploci/errors.hpp"
#include "jumploci/smith.hpp"

namespace jumploci {

namespace {

PolyMatrix zero_matrix(const RingPtr& R, std::size_t rows, std::size_t cols) { return PolyMatrix(R, rows, cols); }

std::string shape(const PolyMatrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

// Columns [begin, end) of m.
PolyMatrix column_range(const PolyMatrix& m, std::size_t begin, std::size_t end) {
  std::vector<std::size_t> idx;
  for (std::size_t c = begin; c < end; ++c) idx.push_back(c);
  return m.select_columns(idx);
}

PolyMatrix row_range(const PolyMatrix& m, std::size_t begin, std::size_t end) {
  std::vector<std::size_t> idx;
  for (std::size_t r = begin; r < end; ++r) idx.push_back(r);
  return m.select_rows(idx);
}

std::size_t rank_at(const PolyMatrix& m, const Coords& w, const Embedding& emb) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return matrix_rank(m.evaluate(w, emb));
}

}  // namespace

FreeChainComplex::FreeChainComplex(RingPtr ring, std::vector<std::size_t> ranks, std::vector<PolyMatrix> differentials)
    : ring_(std::move(ring)), ranks_(std::move(ranks)), d_(std::move(differentials)) {
  if (ranks_.empty()) throw PreconditionError("a chain complex needs at least one term");
  if (d_.size() != ranks_.size() - 1)
    throw PreconditionError(std::to_string(ranks_.size()) + " terms need " + std::to_string(ranks_.size() - 1) +
                            " differentials, got " + std::to_string(d_.size()));
  for (std::size_t k = 0; k < d_.size(); ++k) {
    if (!same_ring(d_[k].ring(), ring_)) throw PreconditionError("differential d_" + std::to_string(k + 1) + " over another ring");
    if (d_[k].rows() != ranks_[k] || d_[k].cols() != ranks_[k + 1])
      throw PreconditionError("d_" + std::to_string(k + 1) + " has shape " + shape(d_[k]) + ", expected " +
                              std::to_string(ranks_[k]) + "x" + std::to_string(ranks_[k + 1]));
  }
}

std::size_t FreeChainComplex::rank(int i) const {
  if (i < 0 || i > length()) return 0;
  return ranks_[static_cast<std::size_t>(i)];
}

PolyMatrix FreeChainComplex::differential(int i) const {
  if (i >= 1 && i <= length()) return d_[static_cast<std::size_t>(i - 1)];
  return zero_matrix(ring_, rank(i - 1), rank(i));
}

PresentedChainComplex::PresentedChainComplex(RingPtr ring, std::vector<ModulePresentation> terms,
                                             std::vector<PolyMatrix> differentials)
    : ring_(std::move(ring)), terms_(std::move(terms)), d_(std::move(differentials)) {
  if (terms_.empty()) throw PreconditionError("a chain complex needs at least one term");
  if (d_.size() != terms_.size() - 1)
    throw PreconditionError(std::to_string(terms_.size()) + " terms need " + std::to_string(terms_.size() - 1) +
                            " differentials, got " + std::to_string(d_.size()));
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& t = terms_[k];
    if (!same_ring(t.ring, ring_) || !same_ring(t.relations.ring(), ring_))
      throw PreconditionError("term " + std::to_string(k) + " over another ring");
    if (t.relations.rows() != t.generators)
      throw PreconditionError("relations of term " + std::to_string(k) + " have " +
                              std::to_string(t.relations.rows()) + " rows for " + std::to_string(t.generators) +
                              " generators");
  }
  for (std::size_t k = 0; k < d_.size(); ++k) {
    if (!same_ring(d_[k].ring(), ring_)) throw PreconditionError("differential d_" + std::to_string(k + 1) + " over another ring");
    if (d_[k].rows() != terms_[k].generators || d_[k].cols() != terms_[k + 1].generators)
      throw PreconditionError("d_" + std::to_string(k + 1) + " has shape " + shape(d_[k]) + ", expected " +
                              std::to_string(terms_[k].generators) + "x" + std::to_string(terms_[k + 1].generators));
  }
}

std::size_t PresentedChainComplex::generators(int i) const {
  if (i < 0 || i > length()) return 0;
  return terms_[static_cast<std::size_t>(i)].generators;
}

PolyMatrix PresentedChainComplex::relations(int i) const {
  if (i < 0 || i > length()) return zero_matrix(ring_, 0, 0);
  return terms_[static_cast<std::size_t>(i)].relations;
}

PolyMatrix PresentedChainComplex::differential(int i) const {
  if (i >= 1 && i <= length()) return d_[static_cast<std::size_t>(i - 1)];
  return zero_matrix(ring_, generators(i - 1), generators(i));
}

bool PresentedChainComplex::is_free() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const ModulePresentation& t) { return t.relations.cols() == 0; });
}

FreeChainComplex PresentedChainComplex::as_free() const {
  if (!is_free()) throw PreconditionError("complex has non-free terms");
  std::vector<std::size_t> ranks;
  for (const auto& t : terms_) ranks.push_back(t.generators);
  return FreeChainComplex(ring_, ranks, d_);
}

PresentedChainComplex PresentedChainComplex::from_free(const FreeChainComplex& e) {
  std::vector<ModulePresentation> terms;
  for (auto c : e.ranks()) terms.emplace_back(e.ring(), c);
  return PresentedChainComplex(e.ring(), std::move(terms), e.differentials());
}

ComplexVerdict validate_complex(const FreeChainComplex& e) {
  ComplexVerdict v;
  for (int i = 1; i < e.length(); ++i) {
    const PolyMatrix comp = e.differential(i) * e.differential(i + 1);
    for (std::size_t r = 0; r < comp.rows(); ++r)
      for (std::size_t c = 0; c < comp.cols(); ++c)
        if (!comp.at(r, c).is_zero()) {
          v.valid = false;
          v.index = i;
          v.row = r;
          v.col = c;
          v.composite = comp.at(r, c).to_string();
          v.message = "d_" + std::to_string(i) + " * d_" + std::to_string(i + 1) + " has entry (" +
                      std::to_string(r) + ", " + std::to_string(c) + ") = " + v.composite;
          return v;
        }
  }
  v.message = "d_i * d_{i+1} = 0 for all i";
  return v;
}

ComplexVerdict validate_complex(const PresentedChainComplex& e, const GroebnerLimits& limits) {
  ComplexVerdict v;
  auto check_into = [&](const PolyMatrix& m, const PolyMatrix& rel, int i, const std::string& what) -> bool {
    if (m.cols() == 0 || m.is_zero()) return true;
    try {
      if (rel.cols() == 0) {
        for (std::size_t r = 0; r < m.rows(); ++r)
          for (std::size_t c = 0; c < m.cols(); ++c)
            if (!m.at(r, c).is_zero()) {
              v = ComplexVerdict{false, true, i, r, c, m.at(r, c).to_string(),
                                 what + " is not zero in term " + std::to_string(i - 1)};
              return false;
            }
        return true;
      }
      const SubmoduleBasis basis = submodule_basis(rel, limits);
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (!submodule_contains(basis, m.column(c))) {
          v = ComplexVerdict{false, true, i, 0, c, "", what + " column " + std::to_string(c) +
                                                           " leaves the relations of term " + std::to_string(i - 1)};
          return false;
        }
    } catch (const ScopeError& err) {
      v.conclusive = false;
      v.message = std::string("membership check skipped: ") + err.what();
    }
    return true;
  };
  for (int i = 1; i <= e.length(); ++i) {
    const PolyMatrix D = e.differential(i);
    const PolyMatrix R = e.relations(i);
    if (R.cols() > 0 && !check_into(D * R, e.relations(i - 1), i, "d_" + std::to_string(i) + " * relations"))
      return v;
    if (i >= 2 && !check_into(e.differential(i - 1) * D, e.relations(i - 2), i - 1,
                              "d_" + std::to_string(i - 1) + " * d_" + std::to_string(i)))
      return v;
  }
  if (v.message.empty()) v.message = "differentials respect relations and compose to zero";
  return v;
}

std::vector<std::size_t> SpecializedComplex::homology_dims() const {
  std::vector<std::size_t> rk(differentials.size() + 2, 0);
  for (std::size_t k = 0; k < differentials.size(); ++k) rk[k + 1] = matrix_rank(differentials[k]);
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < ranks.size(); ++i) dims.push_back(ranks[i] - rk[i] - rk[i + 1]);
  return dims;
}

SpecializedComplex specialize(const FreeChainComplex& e, const Coords& w, const FieldPtr& field) {
  if (w.size() != e.ring()->nvars())
    throw PreconditionError("point has " + std::to_string(w.size()) + " coordinates, ring has " +
                            std::to_string(e.ring()->nvars()) + " variables");
  const Embedding emb(e.ring()->field_ptr(), field);
  SpecializedComplex out{field, e.ranks(), {}};
  for (const auto& d : e.differentials()) out.differentials.push_back(d.evaluate(w, emb));
  return out;
}

std::vector<std::size_t> homology_dims_at_point(const FreeChainComplex& e, const Coords& w, const FieldPtr& field) {
  return specialize(e, w, field).homology_dims();
}

std::vector<std::size_t> homology_dims_at_point(const PresentedChainComplex& e, const Coords& w,
                                                const FieldPtr& field) {
  if (w.size() != e.ring()->nvars())
    throw PreconditionError("point has " + std::to_string(w.size()) + " coordinates, ring has " +
                            std::to_string(e.ring()->nvars()) + " variables");
  const Embedding emb(e.ring()->field_ptr(), field);
  const int n = e.length();
  std::vector<std::size_t> rel_rank(n + 2, 0), induced(n + 2, 0);
  for (int i = 0; i <= n; ++i) rel_rank[i] = rank_at(e.relations(i), w, emb);
  for (int i = 1; i <= n; ++i)
    induced[i] = rank_at(hconcat(e.differential(i), e.relations(i - 1)), w, emb) - rel_rank[i - 1];
  std::vector<std::size_t> dims;
  for (int i = 0; i <= n; ++i) dims.push_back(e.generators(i) - rel_rank[i] - induced[i] - induced[i + 1]);
  return dims;
}

Ideal jump_locus_ideal(const FreeChainComplex& e, int i, long d) {
  if (d <= 0) return Ideal::zero(e.ring());
  const long s = static_cast<long>(e.rank(i)) - d + 1;
  if (s <= 0) return Ideal::unit(e.ring());
  return minors_ideal(block_diagonal(e.differential(i + 1), e.differential(i)), s);
}

Ideal jump_locus_ideal(const PresentedChainComplex& e, int, long) {
  if (e.is_free()) throw PreconditionError("use the free complex view for jump_locus_ideal");
  throw PreconditionError(
      "jump loci of a complex with non-free terms need not be Zariski closed; the determinantal ideal "
      "is only defined for complexes of free modules");
}

PointSet jump_locus_points(const FreeChainComplex& e, int i, long d, const FieldPtr& field, bool torus,
                           const EnumerationLimits& limits) {
  torus = torus || e.ring()->laurent();
  const std::size_t r = e.ring()->nvars();
  if (d <= 0) return all_points(field, r, torus, limits);
  if (e.rank(i) < static_cast<std::size_t>(d)) return PointSet(field, r, torus);
  const Embedding emb(e.ring()->field_ptr(), field);
  const PolyMatrix in = e.differential(i), out = e.differential(i + 1);
  const std::size_t c = e.rank(i);
  return filter_points(
      field, r, torus,
      [&](const Coords& w) { return c - rank_at(in, w, emb) - rank_at(out, w, emb) >= static_cast<std::size_t>(d); },
      limits);
}

PointSet jump_locus_points(const PresentedChainComplex& e, int i, long d, const FieldPtr& field, bool torus,
                           const EnumerationLimits& limits) {
  torus = torus || e.ring()->laurent();
  const std::size_t r = e.ring()->nvars();
  if (d <= 0) return all_points(field, r, torus, limits);
  if (i < 0 || i > e.length()) return PointSet(field, r, torus);
  return filter_points(
      field, r, torus,
      [&](const Coords& w) {
        return homology_dims_at_point(e, w, field)[static_cast<std::size_t>(i)] >= static_cast<std::size_t>(d);
      },
      limits);
}

ModulePresentation prune_presentation(const ModulePresentation& p) {
  const RingPtr& R = p.ring;
  std::size_t g = p.generators;
  std::vector<std::vector<Poly>> rows(g);
  for (std::size_t r = 0; r < g; ++r)
    for (std::size_t c = 0; c < p.relations.cols(); ++c) rows[r].push_back(p.relations.at(r, c));
  std::size_t m = p.relations.cols();
  for (;;) {
    std::size_t pr = g, pc = m;
    for (std::size_t r = 0; r < g && pr == g; ++r)
      for (std::size_t c = 0; c < m; ++c)
        if (rows[r][c].is_unit()) {
          pr = r;
          pc = c;
          break;
        }
    if (pr == g) break;
    // Generator pr equals a combination of the others; eliminate it.
    const Poly inv = rows[pr][pc].unit_inverse();
    for (std::size_t r = 0; r < g; ++r) {
      if (r == pr || rows[r][pc].is_zero()) continue;
      const Poly f = rows[r][pc] * inv;
      for (std::size_t c = 0; c < m; ++c)
        if (!rows[pr][c].is_zero()) rows[r][c] -= f * rows[pr][c];
    }
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(pr));
    for (auto& row : rows) row.erase(row.begin() + static_cast<std::ptrdiff_t>(pc));
    --g;
    --m;
  }
  // Drop zero and repeated columns; normalize each column up to a unit.
  std::vector<std::vector<Poly>> cols;
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<Poly> col;
    bool nonzero = false;
    for (std::size_t r = 0; r < g; ++r) {
      col.push_back(rows[r][c]);
      nonzero = nonzero || !rows[r][c].is_zero();
    }
    if (!nonzero) continue;
    std::size_t first = 0;
    while (col[first].is_zero()) ++first;
    Poly unit = normalize_associate(col[first]);
    // unit = col[first] * u for a unit u; recover u from leading terms.
    const Term& a = col[first].leading_term(MonomialOrder::grlex);
    const Term& b = unit.leading_term(MonomialOrder::grlex);
    Exponents shift = b.exps;
    for (std::size_t k = 0; k < shift.size(); ++k) shift[k] -= a.exps[k];
    const Scalar scale = R->field().div(b.coeff, a.coeff);
    if (R->laurent()) {
      for (auto& e : col) e = e.shifted(shift).scaled(scale);
    } else {
      for (auto& e : col) e = e.scaled(scale);
    }
    if (std::find(cols.begin(), cols.end(), col) == cols.end()) cols.push_back(std::move(col));
  }
  return ModulePresentation(R, g, PolyMatrix::from_columns(R, g, cols));
}

namespace {

ModulePresentation smith_homology(const FreeChainComplex& e, int i) {
  const RingPtr& R = e.ring();
  const std::size_t c = e.rank(i);
  if (c == 0) return ModulePresentation(R, 0);
  const SmithForm s = smith_normal_form(e.differential(i));
  const PolyMatrix y = s.V_inverse * e.differential(i + 1);
  const PolyMatrix rel = row_range(y, s.rank, c);
  const std::size_t g = c - s.rank;
  if (g == 0) return ModulePresentation(R, 0);
  if (rel.cols() == 0) return ModulePresentation(R, g);
  const SmithForm t = smith_normal_form(rel);
  std::vector<Poly> torsion;
  for (const auto& d : t.divisors)
    if (!d.is_zero() && !d.is_unit()) torsion.push_back(d);
  const std::size_t free_rank = g - t.rank;
  const std::size_t g2 = torsion.size() + free_rank;
  PolyMatrix out(R, g2, torsion.size());
  for (std::size_t k = 0; k < torsion.size(); ++k) out.at(k, k) = torsion[k];
  return ModulePresentation(R, g2, out);
}

bool univariate_laurent(const RingPtr& R) { return R->laurent() && R->nvars() == 1; }

}  // namespace

ModulePresentation homology_presentation(const FreeChainComplex& e, int i, const GroebnerLimits& limits) {
  if (univariate_laurent(e.ring())) return smith_homology(e, i);
  return homology_presentation(PresentedChainComplex::from_free(e), i, limits);
}

ModulePresentation homology_presentation(const PresentedChainComplex& e, int i, const GroebnerLimits& limits) {
  const RingPtr& R = e.ring();
  if (e.is_free() && univariate_laurent(R)) return smith_homology(e.as_free(), i);
  const std::size_t g = e.generators(i);
  if (g == 0) return ModulePresentation(R, 0);
  // Cycles: x with D_i x in im R_{i-1}.
  const PolyMatrix a = hconcat(e.differential(i), e.relations(i - 1));
  PolyMatrix k = a.rows() == 0 ? PolyMatrix::identity(R, g) : row_range(syzygy_matrix(a, limits), 0, g);
  std::vector<std::size_t> live;
  for (std::size_t c = 0; c < k.cols(); ++c) {
    bool nz = false;
    for (std::size_t r = 0; r < g; ++r) nz = nz || !k.at(r, c).is_zero();
    if (nz) live.push_back(c);
  }
  k = k.select_columns(live);
  if (k.cols() == 0) return ModulePresentation(R, 0);
  // Relations among cycles: coefficients y with K y in im D_{i+1} + im R_i.
  const PolyMatrix b = hconcat(hconcat(k, e.differential(i + 1)), e.relations(i));
  const PolyMatrix rel = row_range(syzygy_matrix(b, limits), 0, k.cols());
  return prune_presentation(ModulePresentation(R, k.cols(), rel));
}

Ideal fitting_ideal(const ModulePresentation& p, long j) {
  const long s = static_cast<long>(p.generators) - j;
  if (s <= 0) return Ideal::unit(p.ring);
  return minors_ideal(p.relations, s);
}

std::size_t fiber_dimension(const ModulePresentation& p, const Coords& w, const FieldPtr& field) {
  const Embedding emb(p.ring->field_ptr(), field);
  return p.generators - rank_at(p.relations, w, emb);
}

PointSet support_points(const FreeChainComplex& e, int i, long d, const FieldPtr& field, bool torus,
                        const GroebnerLimits& glimits, const EnumerationLimits& limits) {
  const ModulePresentation p = homology_presentation(e, i, glimits);
  return zero_locus_points(fitting_ideal(p, d - 1), field, torus || e.ring()->laurent(), limits);
}

PointSet support_points(const PresentedChainComplex& e, int i, long d, const FieldPtr& field, bool torus,
                        const GroebnerLimits& glimits, const EnumerationLimits& limits) {
  const ModulePresentation p = homology_presentation(e, i, glimits);
  return zero_locus_points(fitting_ideal(p, d - 1), field, torus || e.ring()->laurent(), limits);
}

std::string FinitenessVerdict::describe() const {
  switch (kind) {
    case Kind::finite:
      return "finite (dim " + std::to_string(dimension) + ")";
    case Kind::infinite:
      return "infinite";
    case Kind::unknown:
      break;
  }
  return "unknown" + (reason.empty() ? std::string() : " (" + reason + ")");
}

FinitenessVerdict is_finite_dimensional(const ModulePresentation& p, const GroebnerLimits& limits) {
  using Kind = FinitenessVerdict::Kind;
  FinitenessVerdict v;
  const RingPtr& R = p.ring;
  if (p.generators == 0) {
    v.kind = Kind::finite;
    v.method = "zero module";
    return v;
  }
  if (R->nvars() == 0) {
    v.kind = Kind::finite;
    v.method = "rank over the ground field";
    v.dimension = p.generators - rank_at(p.relations, {}, Embedding(R->field_ptr(), R->field_ptr()));
    return v;
  }
  if (R->nvars() == 1) {
    v.method = "smith normal form";
    if (p.relations.cols() == 0) {
      v.kind = Kind::infinite;
      return v;
    }
    const SmithForm s = smith_normal_form(p.relations);
    if (s.rank < p.generators) {
      v.kind = Kind::infinite;
      return v;
    }
    v.kind = Kind::finite;
    for (const auto& d : s.divisors) v.dimension += static_cast<std::uint64_t>(univariate_degree(d));
    return v;
  }
  v.method = R->laurent() ? "groebner basis over the localization bridge" : "groebner basis";
  try {
    const auto count = quotient_dimension(submodule_basis(p.relations, limits));
    if (count) {
      v.kind = Kind::finite;
      v.dimension = *count;
    } else {
      v.kind = Kind::infinite;
    }
  } catch (const ScopeError& err) {
    v.kind = Kind::unknown;
    v.reason = err.what();
  }
  return v;
}

Poly random_poly(const RingPtr& ring, int max_degree, double density, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const Field& F = ring->field();
  auto coefficient = [&]() {
    if (F.is_finite()) return F.element(1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(F.size() - 1)));
    const long long v = static_cast<long long>(rng() % 6) - 3;
    return F.from_int(v >= 0 ? v + 1 : v);
  };
  if (coin(rng) > density) return Poly(ring);
  const std::size_t r = ring->nvars();
  const int low = ring->laurent() ? -(max_degree / 2) : 0;
  std::vector<Term> terms;
  Exponents e(r, low);
  // Iterate the box [low, max_degree]^r, keep monomials of bounded total size.
  const int span = max_degree - low + 1;
  std::uint64_t box = 1;
  for (std::size_t k = 0; k < r; ++k) box *= static_cast<std::uint64_t>(span);
  for (std::uint64_t idx = 0; idx < box; ++idx) {
    std::uint64_t rest = idx;
    int size = 0;
    for (std::size_t k = 0; k < r; ++k) {
      e[k] = low + static_cast<int>(rest % static_cast<std::uint64_t>(span));
      rest /= static_cast<std::uint64_t>(span);
      size += std::abs(e[k]);
    }
    if (size > max_degree) continue;
    if (coin(rng) < 0.35) terms.push_back({e, coefficient()});
  }
  if (terms.empty()) terms.push_back({Exponents(r, 0), coefficient()});
  return Poly::from_terms(ring, std::move(terms));
}

FreeChainComplex random_free_complex(const RingPtr& ring, const RandomComplexOptions& options, std::uint64_t seed,
                                     const GroebnerLimits& limits) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + attempt);
    std::vector<std::size_t> ranks;
    for (std::size_t k = 0; k <= options.length; ++k) ranks.push_back(1 + rng() % options.max_rank);
    PolyMatrix d1(ring, ranks[0], ranks[1]);
    for (std::size_t r = 0; r < d1.rows(); ++r)
      for (std::size_t c = 0; c < d1.cols(); ++c) d1.at(r, c) = random_poly(ring, options.max_degree, options.density, rng);
    std::vector<PolyMatrix> ds{d1};
    try {
      for (std::size_t k = 1; k < options.length; ++k) {
        const PolyMatrix& prev = ds.back();
        PolyMatrix kernel(ring, prev.cols(), 0);
        if (univariate_laurent(ring)) {
          const SmithForm s = smith_normal_form(prev);
          kernel = column_range(s.V, s.rank, prev.cols());
        } else {
          kernel = syzygy_matrix(prev, limits);
        }
        PolyMatrix coeffs(ring, kernel.cols(), ranks[k + 1]);
        for (std::size_t r = 0; r < coeffs.rows(); ++r)
          for (std::size_t c = 0; c < coeffs.cols(); ++c) coeffs.at(r, c) = random_poly(ring, 1, options.density, rng);
        ds.push_back(kernel.cols() == 0 ? PolyMatrix(ring, prev.cols(), ranks[k + 1]) : kernel * coeffs);
      }
    } catch (const ScopeError&) {
      if (attempt >= 16) throw;
      continue;
    }
    return FreeChainComplex(ring, ranks, ds);
  }
}

}  // namespace jumploci
