#include "jumploci/cga.hpp"

#include <random>

#include "jumploci/errors.hpp"

namespace jumploci {

namespace {

std::string basis_name(int degree, std::size_t index) {
  return "e" + std::to_string(degree) + "_" + std::to_string(index);
}

std::string format_vec(const Field& F, const Vec& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ", ";
    s += F.format(v[k]);
  }
  return s + ")";
}

bool vec_equal(const Field& F, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!F.equal(a[k], b[k])) return false;
  return true;
}

bool vec_zero(const Field& F, const Vec& a) {
  for (const auto& x : a)
    if (!F.is_zero(x)) return false;
  return true;
}

// Structure constants of degree (1, i) products, embedded into a target
// field: mu[i][m][k] is e1_m * ei_k as a vector in A^{i+1}.
class EmbeddedProducts {
 public:
  EmbeddedProducts(const GradedAlgebra& A, const FieldPtr& field) : A_(A), F_(field) {
    const Embedding emb(A.field_ptr(), field);
    const int n = A.top_degree();
    mu_.resize(static_cast<std::size_t>(std::max(n, 0) + 1));
    for (int i = 0; i <= n; ++i) {
      auto& layer = mu_[static_cast<std::size_t>(i)];
      layer.resize(A.dim(1));
      for (std::size_t m = 0; m < A.dim(1); ++m)
        for (std::size_t k = 0; k < A.dim(i); ++k) {
          Vec v = A.basis_product(1, m, i, k);
          for (auto& x : v) x = emb(x);
          layer[m].push_back(std::move(v));
        }
    }
  }

  ScalarMatrix delta(int i, const Vec& a) const {
    const std::size_t rows = A_.dim(i + 1), cols = A_.dim(i);
    ScalarMatrix out(F_, rows, cols);
    if (i < 0 || i > A_.top_degree() || rows == 0) return out;
    const auto& layer = mu_[static_cast<std::size_t>(i)];
    for (std::size_t m = 0; m < a.size(); ++m) {
      if (F_->is_zero(a[m])) continue;
      for (std::size_t k = 0; k < cols; ++k)
        for (std::size_t c = 0; c < rows; ++c) {
          const Scalar& s = layer[m][k][c];
          if (!F_->is_zero(s)) out.at(c, k) = F_->add(out.at(c, k), F_->mul(a[m], s));
        }
    }
    return out;
  }

  Vec square(const Vec& a) const {
    const ScalarMatrix d1 = delta(1, a);
    Vec out(d1.rows(), F_->zero());
    for (std::size_t c = 0; c < d1.rows(); ++c)
      for (std::size_t k = 0; k < d1.cols(); ++k) out[c] = F_->add(out[c], F_->mul(d1.at(c, k), a[k]));
    return out;
  }

  std::vector<std::size_t> betti(const Vec& a) const {
    const int n = A_.top_degree();
    std::vector<std::size_t> rk(static_cast<std::size_t>(n) + 2, 0);
    for (int i = 0; i <= n; ++i) rk[static_cast<std::size_t>(i) + 1] = matrix_rank(delta(i, a));
    std::vector<std::size_t> out;
    for (int i = 0; i <= n; ++i) out.push_back(A_.dim(i) - rk[static_cast<std::size_t>(i)] - rk[static_cast<std::size_t>(i) + 1]);
    return out;
  }

  std::size_t betti_at(const Vec& a, int i) const {
    if (i < 0 || i > A_.top_degree()) return 0;
    return A_.dim(i) - matrix_rank(delta(i - 1, a)) - matrix_rank(delta(i, a));
  }

  const FieldPtr& field() const { return F_; }

 private:
  const GradedAlgebra& A_;
  FieldPtr F_;
  std::vector<std::vector<std::vector<Vec>>> mu_;
};

void check_a(const GradedAlgebra& A, const Vec& a) {
  if (A.top_degree() < 1 && !a.empty()) throw PreconditionError("algebra has no degree-1 part");
  if (a.size() != A.dim(1))
    throw PreconditionError("element has " + std::to_string(a.size()) + " coordinates, A^1 has dimension " +
                            std::to_string(A.dim(1)));
}

}  // namespace

GradedAlgebra::GradedAlgebra(FieldPtr field, std::vector<std::size_t> dims)
    : field_(std::move(field)), dims_(std::move(dims)) {
  if (dims_.empty()) throw PreconditionError("graded algebra needs at least A^0");
  if (dims_[0] != 1) throw PreconditionError("connected algebra needs dim A^0 = 1");
}

std::size_t GradedAlgebra::dim(int i) const {
  if (i < 0 || i > top_degree()) return 0;
  return dims_[static_cast<std::size_t>(i)];
}

void GradedAlgebra::set_product(int i, int j, std::size_t a, std::size_t b, Vec value) {
  if (i < 0 || j < 0 || i + j > top_degree())
    throw PreconditionError("product of degrees " + std::to_string(i) + " and " + std::to_string(j) +
                            " lands above the top degree");
  if (a >= dim(i) || b >= dim(j))
    throw PreconditionError("basis index out of range in product " + basis_name(i, a) + " * " + basis_name(j, b));
  if (value.size() != dim(i + j))
    throw PreconditionError("product " + basis_name(i, a) + " * " + basis_name(j, b) + " needs " +
                            std::to_string(dim(i + j)) + " coordinates");
  const Key key{i, j, a, b};
  if (i > 0 && j > 0 && vec_zero(*field_, value)) {
    mult_.erase(key);
    return;
  }
  mult_[key] = std::move(value);
}

Vec GradedAlgebra::basis_product(int i, std::size_t a, int j, std::size_t b) const {
  if (i + j > top_degree() || i < 0 || j < 0) return {};
  if (auto it = mult_.find(Key{i, j, a, b}); it != mult_.end()) return it->second;
  Vec out(dim(i + j), field_->zero());
  if (i == 0) out[b] = field_->one();
  else if (j == 0) out[a] = field_->one();
  return out;
}

Vec GradedAlgebra::multiply(int i, const Vec& x, int j, const Vec& y) const {
  Vec out(dim(i + j), field_->zero());
  if (i + j > top_degree()) return {};
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (field_->is_zero(x[a])) continue;
    for (std::size_t b = 0; b < y.size(); ++b) {
      if (field_->is_zero(y[b])) continue;
      const Scalar c = field_->mul(x[a], y[b]);
      const Vec p = basis_product(i, a, j, b);
      for (std::size_t k = 0; k < p.size(); ++k) out[k] = field_->add(out[k], field_->mul(c, p[k]));
    }
  }
  return out;
}

bool operator==(const GradedAlgebra& a, const GradedAlgebra& b) {
  if (!(*a.field_ == *b.field_) || a.dims_ != b.dims_) return false;
  for (int i = 0; i <= a.top_degree(); ++i)
    for (int j = 0; i + j <= a.top_degree(); ++j)
      for (std::size_t x = 0; x < a.dim(i); ++x)
        for (std::size_t y = 0; y < a.dim(j); ++y)
          if (!vec_equal(*a.field_, a.basis_product(i, x, j, y), b.basis_product(i, x, j, y))) return false;
  return true;
}

CgaVerdict validate_cga(const GradedAlgebra& A) {
  const Field& F = A.field();
  const int n = A.top_degree();
  CgaVerdict v;
  // Unit axiom.
  for (int j = 0; j <= n; ++j)
    for (std::size_t b = 0; b < A.dim(j); ++b) {
      Vec e(A.dim(j), F.zero());
      e[b] = F.one();
      for (int side = 0; side < 2; ++side) {
        const Vec p = side == 0 ? A.basis_product(0, 0, j, b) : A.basis_product(j, b, 0, 0);
        if (!vec_equal(F, p, e)) {
          v.valid = false;
          v.rule = "unit";
          v.witness = {{0, 0}, {j, b}};
          v.message = "the unit does not act as the identity on " + basis_name(j, b);
          return v;
        }
      }
    }
  // Graded commutativity.
  for (int i = 1; i <= n; ++i)
    for (int j = i; i + j <= n; ++j)
      for (std::size_t a = 0; a < A.dim(i); ++a)
        for (std::size_t b = 0; b < A.dim(j); ++b) {
          const Vec xy = A.basis_product(i, a, j, b);
          const Vec yx = A.basis_product(j, b, i, a);
          Vec expected = xy;
          if ((i * j) % 2 == 1)
            for (auto& c : expected) c = F.neg(c);
          if (!vec_equal(F, yx, expected)) {
            v.valid = false;
            v.rule = "commutativity";
            v.witness = {{i, a}, {j, b}};
            v.message = basis_name(i, a) + " * " + basis_name(j, b) + " = " + format_vec(F, xy) + " but " +
                        basis_name(j, b) + " * " + basis_name(i, a) + " = " + format_vec(F, yx) +
                        ", expected " + format_vec(F, expected);
            return v;
          }
        }
  // Associativity on basis triples.
  for (int i = 1; i <= n; ++i)
    for (int j = 1; i + j <= n; ++j)
      for (int l = 1; i + j + l <= n; ++l)
        for (std::size_t a = 0; a < A.dim(i); ++a)
          for (std::size_t b = 0; b < A.dim(j); ++b)
            for (std::size_t c = 0; c < A.dim(l); ++c) {
              Vec ea(A.dim(i), F.zero()), eb(A.dim(j), F.zero()), ec(A.dim(l), F.zero());
              ea[a] = F.one();
              eb[b] = F.one();
              ec[c] = F.one();
              const Vec left = A.multiply(i + j, A.multiply(i, ea, j, eb), l, ec);
              const Vec right = A.multiply(i, ea, j + l, A.multiply(j, eb, l, ec));
              if (!vec_equal(F, left, right)) {
                v.valid = false;
                v.rule = "associativity";
                v.witness = {{i, a}, {j, b}, {l, c}};
                v.message = "(" + basis_name(i, a) + " * " + basis_name(j, b) + ") * " + basis_name(l, c) + " = " +
                            format_vec(F, left) + " but " + basis_name(i, a) + " * (" + basis_name(j, b) + " * " +
                            basis_name(l, c) + ") = " + format_vec(F, right);
                return v;
              }
            }
  v.message = "unit, graded commutativity and associativity hold";
  return v;
}

std::vector<ScalarMatrix> aomoto(const GradedAlgebra& A, const Vec& a, const FieldPtr& field) {
  check_a(A, a);
  const EmbeddedProducts mu(A, field);
  if (!vec_zero(*field, mu.square(a))) throw PreconditionError("a^2 != 0, so delta(a) is not a differential");
  std::vector<ScalarMatrix> out;
  for (int i = 0; i <= A.top_degree(); ++i) out.push_back(mu.delta(i, a));
  return out;
}

Vec square(const GradedAlgebra& A, const Vec& a, const FieldPtr& field) {
  check_a(A, a);
  return EmbeddedProducts(A, field).square(a);
}

std::vector<std::size_t> aomoto_betti(const GradedAlgebra& A, const Vec& a, const FieldPtr& field) {
  check_a(A, a);
  const EmbeddedProducts mu(A, field);
  if (!vec_zero(*field, mu.square(a))) throw PreconditionError("a^2 != 0, so delta(a) is not a differential");
  return mu.betti(a);
}

bool resonance_member(const GradedAlgebra& A, const Vec& a, int i, long d, const FieldPtr& field) {
  check_a(A, a);
  const EmbeddedProducts mu(A, field);
  if (!vec_zero(*field, mu.square(a))) throw PreconditionError("a^2 != 0, so delta(a) is not a differential");
  if (d <= 0) return true;
  return mu.betti_at(a, i) >= static_cast<std::size_t>(d);
}

PointSet resonance_points(const GradedAlgebra& A, int i, long d, const FieldPtr& field,
                          const EnumerationLimits& limits) {
  const EmbeddedProducts mu(A, field);
  return filter_points(
      field, A.dim(1), false,
      [&](const Coords& a) {
        if (!vec_zero(*field, mu.square(a))) return false;
        return d <= 0 || mu.betti_at(a, i) >= static_cast<std::size_t>(d);
      },
      limits);
}

bool is_cone(const PointSet& s) {
  const Field& F = s.field();
  for (const auto& p : s.points())
    for (std::int64_t c = 1; c < F.size(); ++c) {
      Coords q = p;
      for (auto& x : q) x = F.mul(F.element(c), x);
      if (!s.contains(q)) return false;
    }
  return true;
}

RingPtr resonance_ring(const GradedAlgebra& A) {
  std::vector<std::string> vars;
  for (std::size_t m = 0; m < A.dim(1); ++m) vars.push_back("a" + std::to_string(m + 1));
  return Ring::make(A.field_ptr(), vars, false);
}

PolyMatrix symbolic_aomoto(const GradedAlgebra& A, int i, const RingPtr& R) {
  const std::size_t rows = A.dim(i + 1), cols = A.dim(i);
  PolyMatrix out(R, rows, cols);
  if (i < 0 || rows == 0 || cols == 0) return out;
  for (std::size_t m = 0; m < A.dim(1); ++m) {
    const Poly am = Poly::variable(R, m);
    for (std::size_t k = 0; k < cols; ++k) {
      const Vec p = A.basis_product(1, m, i, k);
      for (std::size_t c = 0; c < rows; ++c)
        if (!A.field().is_zero(p[c])) out.at(c, k) += am.scaled(p[c]);
    }
  }
  return out;
}

Ideal resonance_ideal(const GradedAlgebra& A, int i, long d) {
  const RingPtr R = resonance_ring(A);
  Ideal out(R);
  // Quadric cone a^2 = 0.
  const PolyMatrix d1 = symbolic_aomoto(A, 1, R);
  for (std::size_t c = 0; c < d1.rows(); ++c) {
    Poly q(R);
    for (std::size_t k = 0; k < d1.cols(); ++k) q += d1.at(c, k) * Poly::variable(R, k);
    out.add(q);
  }
  if (d <= 0) return out;
  const long s = static_cast<long>(A.dim(i)) - d + 1;
  if (s <= 0) return Ideal::unit(R);
  const Ideal minors = minors_ideal(block_diagonal(symbolic_aomoto(A, i, R), symbolic_aomoto(A, i - 1, R)), s);
  for (const auto& g : minors.generators()) out.add(g);
  return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

GradedAlgebra pairing_cga(const FieldPtr& field, std::size_t b1, std::size_t b2,
                          const std::map<std::pair<std::size_t, std::size_t>, Vec>& pairing) {
  GradedAlgebra A(field, {1, b1, b2});
  const bool char2 = field->characteristic() == 2;
  for (const auto& [key, value] : pairing) {
    const auto [m, l] = key;
    if (m == l) {
      A.set_product(1, 1, m, m, value);
      continue;
    }
    A.set_product(1, 1, m, l, value);
    Vec neg = value;
    if (!char2)
      for (auto& x : neg) x = field->neg(x);
    A.set_product(1, 1, l, m, neg);
  }
  return A;
}

GradedAlgebra sample_cga(const std::vector<std::size_t>& shape, const FieldPtr& field, std::uint64_t seed) {
  if (shape.empty() || shape[0] != 1) throw PreconditionError("shape must start with b_0 = 1");
  if (shape.size() > 3)
    throw PreconditionError("sampling is only implemented for shapes (1, b1, b2); longer shapes need explicit "
                            "structure constants");
  if (shape.size() < 3) return GradedAlgebra(field, shape);
  std::mt19937_64 rng(seed);
  auto element = [&]() {
    if (field->is_finite())
      return field->element(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(field->size())));
    return field->from_int(static_cast<long long>(rng() % 5) - 2);
  };
  const std::size_t b1 = shape[1], b2 = shape[2];
  const bool char2 = field->characteristic() == 2;
  std::map<std::pair<std::size_t, std::size_t>, Vec> pairing;
  for (std::size_t m = 0; m < b1; ++m)
    for (std::size_t l = char2 ? m : m + 1; l < b1; ++l) {
      Vec v;
      for (std::size_t c = 0; c < b2; ++c) v.push_back(element());
      pairing[{m, l}] = std::move(v);
    }
  return pairing_cga(field, b1, b2, pairing);
}

bool pairing_nondegenerate(const GradedAlgebra& A) {
  const std::size_t b1 = A.dim(1), b2 = A.dim(2);
  if (b1 == 0) return true;
  ScalarMatrix m(A.field_ptr(), b1 * b2, b1);
  for (std::size_t a = 0; a < b1; ++a)
    for (std::size_t l = 0; l < b1; ++l) {
      const Vec p = A.basis_product(1, a, 1, l);
      for (std::size_t c = 0; c < p.size(); ++c) m.at(l * b2 + c, a) = p[c];
    }
  return matrix_rank(m) == b1;
}

namespace {

// Independent recount: walk all of A^1 directly and look for a nonzero
// square-zero a with H^i != 0.
bool has_nonzero_resonant(const GradedAlgebra& A, int i, const FieldPtr& field) {
  bool found = false;
  for_each_point(field, A.dim(1), false, [&](const Coords& a) {
    if (found || vec_zero(*field, a)) return;
    if (!vec_zero(*field, square(A, a, field))) return;
    if (aomoto_betti(A, a, field)[static_cast<std::size_t>(i)] >= 1) found = true;
  });
  return found;
}

std::optional<Vec> first_nonzero(const PointSet& s) {
  for (const auto& p : s.points())
    if (!vec_zero(s.field(), p)) return p;
  return std::nullopt;
}

}  // namespace

GenericVanishingReport generic_vanishing_experiment(const std::vector<std::size_t>& shape, int i, std::uint64_t trials,
                                                    const FieldPtr& field, std::uint64_t seed) {
  if (trials == 0) throw PreconditionError("the experiment needs at least one trial");
  if (!field->is_finite()) throw ScopeError("the experiment enumerates A^1 and needs a finite field");
  if (shape.size() != 3) throw PreconditionError("the experiment samples shapes (1, b1, b2) only");
  if (i < 0 || i > 2) throw PreconditionError("degree i must lie in 0..2 for a shape (1, b1, b2)");
  GenericVanishingReport rep;
  rep.shape = shape;
  rep.i = i;
  rep.trials = trials;
  rep.seed = seed;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const GradedAlgebra A = sample_cga(shape, field, derive_seed(seed, t));
    const PointSet r = resonance_points(A, i, 1, field);
    TrialRecord rec;
    rec.trial = t;
    rec.resonance_size = r.size();
    rec.witness = first_nonzero(r);
    rec.in_complement = rec.witness.has_value();
    rec.nondegenerate = pairing_nondegenerate(A);
    if (rec.witness) rec.witness_verified = resonance_member(A, *rec.witness, i, 1, field);
    (rec.in_complement ? rep.complement_count : rep.open_count)++;
    if (rec.nondegenerate) {
      ++rep.nondegenerate_count;
      if (!rec.in_complement) ++rep.nondegenerate_in_open;
    }
    rep.records.push_back(std::move(rec));
  }
  auto reference = [&](const std::string& name, const GradedAlgebra& A) {
    const PointSet r = resonance_points(A, i, 1, field);
    ReferenceRecord ref;
    ref.name = name;
    ref.resonance_size = r.size();
    ref.in_complement = first_nonzero(r).has_value();
    ref.recomputation_agrees = ref.in_complement == has_nonzero_resonant(A, i, field);
    rep.references.push_back(ref);
  };
  reference("zero pairing", GradedAlgebra(field, shape));
  if (shape[1] >= 2 && shape[2] >= 1) {
    Vec v(shape[2], field->zero());
    v[0] = field->one();
    GradedAlgebra std_pairing = pairing_cga(field, shape[1], shape[2], {{{0, 1}, v}});
    reference("standard pairing e1_0 * e1_1 = e2_0", std_pairing);
  }
  return rep;
}

}  // namespace jumploci
