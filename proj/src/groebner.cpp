#include "jumploci/groebner.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "jumploci/errors.hpp"

namespace jumploci {

namespace {

struct Lead {
  std::size_t pos;
  Exponents exps;
  Scalar coeff;
};

std::optional<Lead> lead_of(const ModuleVector& v, MonomialOrder order) {
  for (std::size_t p = 0; p < v.size(); ++p)
    if (!v[p].is_zero()) {
      const Term& t = v[p].leading_term(order);
      return Lead{p, t.exps, t.coeff};
    }
  return std::nullopt;
}

bool is_zero_vector(const ModuleVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
}

int degree_of(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

Exponents exps_sub(const Exponents& a, const Exponents& b) {
  Exponents out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

// v -= c * x^e * g
void sub_multiple(ModuleVector& v, const ModuleVector& g, const Exponents& e, const Scalar& c) {
  for (std::size_t p = 0; p < v.size(); ++p)
    if (!g[p].is_zero()) v[p] -= g[p].shifted(e).scaled(c);
}

void make_monic(ModuleVector& v, const Field& F, MonomialOrder order) {
  auto l = lead_of(v, order);
  if (!l || F.is_one(l->coeff)) return;
  const Scalar inv = F.inv(l->coeff);
  for (auto& p : v)
    if (!p.is_zero()) p = p.scaled(inv);
}

void require_ordinary(const RingPtr& ring, const char* what) {
  if (ring->laurent())
    throw PreconditionError(std::string(what) + " needs an ordinary polynomial ring, got " + ring->describe() +
                            "; clear denominators first");
}

class ModuleBuchberger {
 public:
  ModuleBuchberger(RingPtr ring, std::size_t rank, const GroebnerLimits& limits)
      : ring_(std::move(ring)), order_(ring_->order()), rank_(rank), limits_(limits) {}

  void add_generator(ModuleVector v) {
    v = reduce(std::move(v));
    if (!is_zero_vector(v)) insert(std::move(v));
  }

  void run() {
    while (!queue_.empty()) {
      const auto [deg, i, j] = queue_.top();
      queue_.pop();
      done_.insert({i, j});
      if (chain_skip(i, j)) continue;
      ModuleVector s = spoly(i, j);
      s = reduce(std::move(s));
      if (!is_zero_vector(s)) insert(std::move(s));
    }
  }

  ModuleBasis minimal() const {
    ModuleBasis out{ring_, rank_, {}};
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < basis_.size() && !redundant; ++j) {
        if (i == j || leads_[i].pos != leads_[j].pos || !divides(leads_[j].exps, leads_[i].exps)) continue;
        // Equal leads: keep the earlier element.
        redundant = leads_[i].exps != leads_[j].exps || j < i;
      }
      if (!redundant) out.elements.push_back(basis_[i]);
    }
    return out;
  }

  ModuleVector reduce(ModuleVector v) const {
    const Field& F = ring_->field();
    for (;;) {
      auto l = lead_of(v, order_);
      if (!l) return v;
      bool hit = false;
      for (std::size_t k = 0; k < basis_.size(); ++k) {
        const Lead& g = leads_[k];
        if (g.pos != l->pos || !divides(g.exps, l->exps)) continue;
        sub_multiple(v, basis_[k], exps_sub(l->exps, g.exps), F.div(l->coeff, g.coeff));
        hit = true;
        break;
      }
      if (!hit) return v;
    }
  }

 private:
  using Pair = std::tuple<int, std::size_t, std::size_t>;

  void insert(ModuleVector v) {
    make_monic(v, ring_->field(), order_);
    if (basis_.size() >= limits_.max_basis)
      throw ScopeError("Gröbner basis exceeds " + std::to_string(limits_.max_basis) + " elements");
    auto l = *lead_of(v, order_);
    const std::size_t n = basis_.size();
    basis_.push_back(std::move(v));
    leads_.push_back(l);
    for (std::size_t i = 0; i < n; ++i) {
      if (leads_[i].pos != l.pos) continue;
      const Exponents m = monomial_lcm(leads_[i].exps, l.exps);
      // Coprime leads: the S-vector reduces to zero for ideals.
      if (rank_ == 1 && degree_of(m) == degree_of(leads_[i].exps) + degree_of(l.exps)) {
        done_.insert({i, n});
        continue;
      }
      const int deg = degree_of(m);
      if (deg > limits_.max_working_degree)
        throw ScopeError("Gröbner computation exceeds working degree " +
                         std::to_string(limits_.max_working_degree));
      queue_.push({deg, i, n});
    }
  }

  bool processed(std::size_t a, std::size_t b) const {
    return done_.count({std::min(a, b), std::max(a, b)}) > 0;
  }

  bool chain_skip(std::size_t i, std::size_t j) const {
    const Exponents m = monomial_lcm(leads_[i].exps, leads_[j].exps);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (k == i || k == j || leads_[k].pos != leads_[i].pos) continue;
      if (divides(leads_[k].exps, m) && processed(i, k) && processed(j, k)) return true;
    }
    return false;
  }

  ModuleVector spoly(std::size_t i, std::size_t j) const {
    const Field& F = ring_->field();
    const Exponents m = monomial_lcm(leads_[i].exps, leads_[j].exps);
    ModuleVector s(rank_, Poly(ring_));
    sub_multiple(s, basis_[i], exps_sub(m, leads_[i].exps), F.neg(F.inv(leads_[i].coeff)));
    sub_multiple(s, basis_[j], exps_sub(m, leads_[j].exps), F.inv(leads_[j].coeff));
    return s;
  }

  struct PairOrder {
    bool operator()(const Pair& a, const Pair& b) const { return a > b; }
  };

  RingPtr ring_;
  MonomialOrder order_;
  std::size_t rank_;
  GroebnerLimits limits_;
  std::vector<ModuleVector> basis_;
  std::vector<Lead> leads_;
  std::priority_queue<Pair, std::vector<Pair>, PairOrder> queue_;
  std::set<std::pair<std::size_t, std::size_t>> done_;
};

}  // namespace

ModuleBasis module_groebner(const PolyMatrix& gens, const GroebnerLimits& limits) {
  require_ordinary(gens.ring(), "module Gröbner basis");
  if (gens.ring()->nvars() > limits.max_module_vars)
    throw ScopeError("module Gröbner basis limited to " + std::to_string(limits.max_module_vars) +
                     " variables");
  if (gens.cols() > limits.max_module_generators)
    throw ScopeError("module Gröbner basis limited to " + std::to_string(limits.max_module_generators) +
                     " generators");
  ModuleBuchberger engine(gens.ring(), gens.rows(), limits);
  for (std::size_t c = 0; c < gens.cols(); ++c) engine.add_generator(gens.column(c));
  engine.run();
  return engine.minimal();
}

ModuleVector module_reduce(const ModuleBasis& basis, ModuleVector v) {
  const Field& F = basis.ring->field();
  const MonomialOrder order = basis.ring->order();
  std::vector<Lead> leads;
  for (const auto& g : basis.elements) leads.push_back(*lead_of(g, order));
  for (;;) {
    auto l = lead_of(v, order);
    if (!l) return v;
    bool hit = false;
    for (std::size_t k = 0; k < leads.size(); ++k) {
      if (leads[k].pos != l->pos || !divides(leads[k].exps, l->exps)) continue;
      sub_multiple(v, basis.elements[k], exps_sub(l->exps, leads[k].exps), F.div(l->coeff, leads[k].coeff));
      hit = true;
      break;
    }
    if (!hit) return v;
  }
}

bool module_contains(const ModuleBasis& basis, const ModuleVector& v) {
  return is_zero_vector(module_reduce(basis, v));
}

std::optional<std::uint64_t> standard_monomial_count(const ModuleBasis& basis) {
  const std::size_t r = basis.ring->nvars();
  const MonomialOrder order = basis.ring->order();
  std::vector<std::vector<Exponents>> leads(basis.rank);
  for (const auto& g : basis.elements) {
    auto l = *lead_of(g, order);
    leads[l.pos].push_back(l.exps);
  }
  std::uint64_t total = 0;
  for (const auto& ls : leads) {
    // Finite quotient iff every variable has a pure power among the leads.
    std::vector<int> bound(r, -1);
    bool unit = false;
    for (const auto& e : ls) {
      std::size_t nz = 0, var = 0;
      for (std::size_t k = 0; k < r; ++k)
        if (e[k] != 0) {
          ++nz;
          var = k;
        }
      if (nz == 0) unit = true;
      if (nz == 1 && (bound[var] < 0 || e[var] < bound[var])) bound[var] = e[var];
    }
    if (unit) continue;
    if (std::any_of(bound.begin(), bound.end(), [](int b) { return b < 0; })) return std::nullopt;
    std::uint64_t box = 1;
    for (int b : bound) box *= static_cast<std::uint64_t>(b);
    if (box > 50'000'000) throw ScopeError("standard monomial box too large to enumerate");
    Exponents e(r, 0);
    for (std::uint64_t idx = 0; idx < box; ++idx) {
      std::uint64_t rest = idx;
      for (std::size_t k = 0; k < r; ++k) {
        e[k] = static_cast<std::int32_t>(rest % bound[k]);
        rest /= bound[k];
      }
      if (std::none_of(ls.begin(), ls.end(), [&](const Exponents& l) { return divides(l, e); })) ++total;
    }
  }
  return total;
}

Poly s_polynomial(const Poly& f, const Poly& g) {
  const Field& F = f.field();
  const Term& a = f.leading_term();
  const Term& b = g.leading_term();
  const Exponents m = monomial_lcm(a.exps, b.exps);
  return f.shifted(exps_sub(m, a.exps)).scaled(F.inv(a.coeff)) -
         g.shifted(exps_sub(m, b.exps)).scaled(F.inv(b.coeff));
}

Poly reduce(const Poly& f, const std::vector<Poly>& basis) {
  const RingPtr& R = f.ring();
  const Field& F = f.field();
  const MonomialOrder order = R->order();
  Poly p = f, rem(R);
  while (!p.is_zero()) {
    const Term lt = p.leading_term(order);
    bool hit = false;
    for (const auto& g : basis) {
      const Term& lg = g.leading_term(order);
      if (!divides(lg.exps, lt.exps)) continue;
      p -= g.shifted(exps_sub(lt.exps, lg.exps)).scaled(F.div(lt.coeff, lg.coeff));
      hit = true;
      break;
    }
    if (!hit) {
      Poly m = Poly::monomial(R, lt.exps, lt.coeff);
      rem += m;
      p -= m;
    }
  }
  return rem;
}

Ideal buchberger(const Ideal& ideal, const GroebnerLimits& limits) {
  const RingPtr& R = ideal.ring();
  require_ordinary(R, "Buchberger");
  if (R->nvars() > limits.max_vars)
    throw ScopeError("Buchberger limited to " + std::to_string(limits.max_vars) + " variables");
  if (ideal.generators().size() > limits.max_generators)
    throw ScopeError("Buchberger limited to " + std::to_string(limits.max_generators) + " generators");
  for (const auto& g : ideal.generators())
    if (g.total_degree() > limits.max_degree)
      throw ScopeError("Buchberger limited to degree " + std::to_string(limits.max_degree));
  if (ideal.is_zero_ideal()) return ideal;

  ModuleBuchberger engine(R, 1, limits);
  for (const auto& g : ideal.generators()) engine.add_generator({g});
  engine.run();
  std::vector<Poly> basis;
  for (const auto& v : engine.minimal().elements) basis.push_back(v[0]);
  // Tail-reduce each element against the others.
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (j != i) others.push_back(basis[j]);
    const Term lt = basis[i].leading_term();
    Poly lead = Poly::monomial(R, lt.exps, lt.coeff);
    basis[i] = lead + reduce(basis[i] - lead, others);
  }
  std::sort(basis.begin(), basis.end(), [&](const Poly& a, const Poly& b) {
    return compare_monomials(a.leading_term().exps, b.leading_term().exps, R->order()) < 0;
  });
  Ideal out(R);
  for (const auto& b : basis) out.add(b.scaled(R->field().inv(b.leading_term().coeff)));
  return out;
}

bool ideal_contains(const Ideal& groebner_basis, const Poly& f) {
  return reduce(f, groebner_basis.generators()).is_zero();
}

namespace {

PolyMatrix ordinary_syzygies(const PolyMatrix& m, const GroebnerLimits& limits) {
  const RingPtr& R = m.ring();
  const std::size_t rows = m.rows(), n = m.cols();
  PolyMatrix aug(R, rows + n, n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < rows; ++r) aug.at(r, c) = m.at(r, c);
    aug.at(rows + c, c) = Poly::from_int(R, 1);
  }
  const ModuleBasis gb = module_groebner(aug, limits);
  std::vector<std::vector<Poly>> cols;
  const MonomialOrder order = R->order();
  for (const auto& g : gb.elements) {
    if (lead_of(g, order)->pos < rows) continue;
    cols.emplace_back(g.begin() + static_cast<std::ptrdiff_t>(rows), g.end());
  }
  return PolyMatrix::from_columns(R, n, cols);
}

}  // namespace

PolyMatrix syzygy_matrix(const PolyMatrix& m, const GroebnerLimits& limits) {
  const RingPtr& R = m.ring();
  if (m.cols() == 0) return PolyMatrix(R, 0, 0);
  if (!R->laurent()) return ordinary_syzygies(m, limits);

  // Clear denominators column by column: M diag(t^a) is polynomial, and
  // ker M = diag(t^a) ker(M diag(t^a)) over the Laurent ring.
  const RingPtr P = R->with_laurent(false);
  const std::size_t r = R->nvars();
  std::vector<Exponents> shift(m.cols(), Exponents(r, 0));
  PolyMatrix cleared(P, m.rows(), m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    bool any = false;
    for (std::size_t row = 0; row < m.rows(); ++row) {
      const Poly& e = m.at(row, c);
      if (e.is_zero()) continue;
      const Exponents low = e.min_exponents();
      for (std::size_t k = 0; k < r; ++k) shift[c][k] = any ? std::min(shift[c][k], low[k]) : low[k];
      any = true;
    }
    for (auto& s : shift[c]) s = -s;
    for (std::size_t row = 0; row < m.rows(); ++row) cleared.at(row, c) = m.at(row, c).shifted(shift[c]).recast(P);
  }
  const PolyMatrix syz = ordinary_syzygies(cleared, limits);
  PolyMatrix out(R, m.cols(), syz.cols());
  for (std::size_t c = 0; c < syz.cols(); ++c) {
    std::vector<Poly> col;
    for (std::size_t row = 0; row < syz.rows(); ++row) col.push_back(syz.at(row, c).recast(R).shifted(shift[row]));
    // Normalize the column by a monomial unit.
    Exponents low;
    bool any = false;
    for (const auto& e : col) {
      if (e.is_zero()) continue;
      const Exponents le = e.min_exponents();
      if (!any) low = le;
      else
        for (std::size_t k = 0; k < r; ++k) low[k] = std::min(low[k], le[k]);
      any = true;
    }
    for (auto& x : low) x = -x;
    for (std::size_t row = 0; row < col.size(); ++row) out.at(row, c) = any ? col[row].shifted(low) : col[row];
  }
  return out;
}

namespace {

// Multiplies by a monomial so that no exponent is negative, then moves the
// vector into `target` (which may have extra trailing variables).
ModuleVector clear_and_recast(const ModuleVector& v, const RingPtr& target) {
  const std::size_t r = v.empty() ? 0 : v[0].ring()->nvars();
  Exponents low(r, 0);
  for (const auto& e : v) {
    if (e.is_zero()) continue;
    const Exponents le = e.min_exponents();
    for (std::size_t k = 0; k < r; ++k) low[k] = std::min(low[k], le[k]);
  }
  for (auto& x : low) x = -x;
  ModuleVector out;
  for (const auto& e : v) out.push_back(e.shifted(low).recast(target));
  return out;
}

}  // namespace

SubmoduleBasis submodule_basis(const PolyMatrix& gens, const GroebnerLimits& limits) {
  SubmoduleBasis out;
  out.source = gens.ring();
  if (!gens.ring()->laurent()) {
    out.basis = module_groebner(gens, limits);
    return out;
  }
  out.bridged = true;
  const RingPtr P = gens.ring()->with_laurent(false)->with_variable("_z");
  const std::size_t r = gens.ring()->nvars(), rank = gens.rows();
  std::vector<std::vector<Poly>> cols;
  for (std::size_t c = 0; c < gens.cols(); ++c) cols.push_back(clear_and_recast(gens.column(c), P));
  Exponents all(r + 1, 1);
  const Poly unit_relation = Poly::monomial(P, all, P->field().one()) - Poly::from_int(P, 1);
  for (std::size_t p = 0; p < rank; ++p) {
    std::vector<Poly> col(rank, Poly(P));
    col[p] = unit_relation;
    cols.push_back(std::move(col));
  }
  out.basis = module_groebner(PolyMatrix::from_columns(P, rank, cols), limits);
  return out;
}

bool submodule_contains(const SubmoduleBasis& m, const ModuleVector& v) {
  if (!m.bridged) return module_contains(m.basis, v);
  return module_contains(m.basis, clear_and_recast(v, m.basis.ring));
}

std::optional<std::uint64_t> quotient_dimension(const SubmoduleBasis& m) {
  return standard_monomial_count(m.basis);
}

}  // namespace jumploci
