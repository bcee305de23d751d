#include "jumploci/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "jumploci/errors.hpp"

namespace jumploci {

RingPtr Ring::make(FieldPtr field, std::vector<std::string> variables, bool laurent,
                   MonomialOrder order) {
  if (!field) throw PreconditionError("ring needs a field");
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].empty()) throw PreconditionError("empty variable name");
    for (std::size_t j = 0; j < i; ++j)
      if (variables[i] == variables[j])
        throw PreconditionError("duplicate variable name '" + variables[i] + "'");
  }
  auto r = std::shared_ptr<Ring>(new Ring());
  r->field_ = std::move(field);
  r->variables_ = std::move(variables);
  r->laurent_ = laurent;
  r->order_ = order;
  return r;
}

std::optional<std::size_t> Ring::variable_index(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i] == name) return i;
  return std::nullopt;
}

RingPtr Ring::with_field(FieldPtr field) const {
  return make(std::move(field), variables_, laurent_, order_);
}

RingPtr Ring::with_laurent(bool laurent) const {
  return make(field_, variables_, laurent, order_);
}

RingPtr Ring::with_variable(const std::string& name) const {
  auto vars = variables_;
  vars.push_back(name);
  return make(field_, std::move(vars), laurent_, order_);
}

std::string Ring::describe() const {
  std::string s = field_->name() + "[";
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (i) s += ",";
    s += variables_[i];
    if (laurent_) s += "^+-1";
  }
  return s + "]";
}

bool operator==(const Ring& a, const Ring& b) {
  return *a.field_ == *b.field_ && a.variables_ == b.variables_ && a.laurent_ == b.laurent_ &&
         a.order_ == b.order_;
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

int compare_monomials(const Exponents& a, const Exponents& b, MonomialOrder order) {
  if (order == MonomialOrder::grlex) {
    const long da = std::accumulate(a.begin(), a.end(), 0L);
    const long db = std::accumulate(b.begin(), b.end(), 0L);
    if (da != db) return da < db ? -1 : 1;
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponents monomial_lcm(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

Poly Poly::constant(RingPtr ring, const Scalar& c) {
  Poly p(ring);
  if (!ring->field().is_zero(c)) p.terms_.push_back({Exponents(ring->nvars(), 0), c});
  return p;
}

Poly Poly::from_int(RingPtr ring, long long n) {
  const Scalar c = ring->field().from_int(n);
  return constant(std::move(ring), c);
}

Poly Poly::monomial(RingPtr ring, Exponents exps, const Scalar& c) {
  if (exps.size() != ring->nvars()) throw PreconditionError("exponent vector length mismatch");
  if (!ring->laurent())
    for (auto e : exps)
      if (e < 0) throw PreconditionError("negative exponent in a non-Laurent ring");
  Poly p(ring);
  if (!ring->field().is_zero(c)) p.terms_.push_back({std::move(exps), c});
  return p;
}

Poly Poly::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->nvars()) throw PreconditionError("variable index out of range");
  Exponents e(ring->nvars(), 0);
  e[index] = 1;
  const Scalar one = ring->field().one();
  return monomial(std::move(ring), std::move(e), one);
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
  Poly p(std::move(ring));
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void Poly::normalize() {
  const Field& F = field();
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.exps < b.exps; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().exps == t.exps) {
      out.back().coeff = F.add(out.back().coeff, t.coeff);
    } else {
      if (!out.empty() && F.is_zero(out.back().coeff)) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && F.is_zero(out.back().coeff)) out.pop_back();
  terms_ = std::move(out);
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (auto e : terms_[0].exps)
    if (e != 0) return false;
  return true;
}

bool Poly::is_unit() const {
  if (terms_.size() != 1) return false;
  return ring_->laurent() || is_constant();
}

Scalar Poly::constant_coefficient() const { return coefficient(Exponents(ring_->nvars(), 0)); }

Scalar Poly::coefficient(const Exponents& exps) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exps,
                             [](const Term& t, const Exponents& e) { return t.exps < e; });
  if (it != terms_.end() && it->exps == exps) return it->coeff;
  return field().zero();
}

Poly Poly::operator-() const {
  Poly r(ring_);
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coeff = field().neg(t.coeff);
  return r;
}

namespace {

void check_ring(const Poly& a, const Poly& b) {
  if (!same_ring(a.ring(), b.ring()))
    throw PreconditionError("polynomials from different rings: " + a.ring()->describe() +
                            " vs " + b.ring()->describe());
}

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract,
                              const Field& F) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].exps < b[j].exps)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].exps < a[i].exps) {
      out.push_back({b[j].exps, subtract ? F.neg(b[j].coeff) : b[j].coeff});
      ++j;
    } else {
      Scalar c = subtract ? F.sub(a[i].coeff, b[j].coeff) : F.add(a[i].coeff, b[j].coeff);
      if (!F.is_zero(c)) out.push_back({a[i].exps, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& other) {
  check_ring(*this, other);
  terms_ = merge_terms(terms_, other.terms_, false, field());
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  check_ring(*this, other);
  terms_ = merge_terms(terms_, other.terms_, true, field());
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  check_ring(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(a.ring_);
  const Field& F = a.field();
  std::vector<Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      Exponents e(s.exps.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = s.exps[k] + t.exps[k];
      terms.push_back({std::move(e), F.mul(s.coeff, t.coeff)});
    }
  }
  return Poly::from_terms(a.ring_, std::move(terms));
}

Poly& Poly::operator*=(const Poly& other) {
  *this = *this * other;
  return *this;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].exps != b.terms_[i].exps || !(a.terms_[i].coeff == b.terms_[i].coeff))
      return false;
  return true;
}

Poly Poly::scaled(const Scalar& c) const {
  const Field& F = field();
  Poly r(ring_);
  if (F.is_zero(c)) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coeff = F.mul(t.coeff, c);
  return r;
}

Poly Poly::shifted(const Exponents& exps) const {
  Poly r(ring_);
  r.terms_ = terms_;
  for (auto& t : r.terms_)
    for (std::size_t k = 0; k < exps.size(); ++k) {
      t.exps[k] += exps[k];
      if (t.exps[k] < 0 && !ring_->laurent())
        throw PreconditionError("negative exponent in a non-Laurent ring");
    }
  return r;
}

Poly Poly::pow(long long e) const {
  if (e < 0) return unit_inverse().pow(-e);
  Poly result = Poly::from_int(ring_, 1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Poly Poly::unit_inverse() const {
  if (!is_unit()) throw PreconditionError("not a unit: " + to_string());
  Exponents e = terms_[0].exps;
  for (auto& x : e) x = -x;
  return monomial(ring_, std::move(e), field().inv(terms_[0].coeff));
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, std::accumulate(t.exps.begin(), t.exps.end(), 0));
  return d;
}

int Poly::max_degree(std::size_t var) const {
  int d = std::numeric_limits<int>::min();
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.exps[var]));
  return d;
}

int Poly::min_degree(std::size_t var) const {
  int d = std::numeric_limits<int>::max();
  for (const auto& t : terms_) d = std::min(d, static_cast<int>(t.exps[var]));
  return d;
}

Exponents Poly::min_exponents() const {
  Exponents e(ring_->nvars(), 0);
  if (terms_.empty()) return e;
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = min_degree(k);
  return e;
}

bool Poly::has_negative_exponents() const {
  for (const auto& t : terms_)
    for (auto e : t.exps)
      if (e < 0) return true;
  return false;
}

const Term& Poly::leading_term() const { return leading_term(ring_->order()); }

const Term& Poly::leading_term(MonomialOrder order) const {
  if (terms_.empty()) throw PreconditionError("leading term of zero polynomial");
  if (order == MonomialOrder::lex) return terms_.back();
  const Term* best = &terms_[0];
  for (const auto& t : terms_)
    if (compare_monomials(t.exps, best->exps, order) > 0) best = &t;
  return *best;
}

Scalar Poly::evaluate(const std::vector<Scalar>& point, const Embedding& embedding) const {
  if (point.size() != ring_->nvars())
    throw PreconditionError("point dimension " + std::to_string(point.size()) +
                            " does not match ring " + ring_->describe());
  const Field& T = *embedding.target();
  Scalar acc = T.zero();
  for (const auto& t : terms_) {
    Scalar v = embedding(t.coeff);
    for (std::size_t k = 0; k < point.size() && !T.is_zero(v); ++k)
      if (t.exps[k] != 0) v = T.mul(v, T.pow(point[k], t.exps[k]));
    acc = T.add(acc, v);
  }
  return acc;
}

Poly Poly::mapped(RingPtr target, const Embedding& embedding) const {
  if (target->nvars() < ring_->nvars()) throw PreconditionError("target ring has too few variables");
  std::vector<Term> terms;
  for (const auto& t : terms_) {
    Exponents e = t.exps;
    e.resize(target->nvars(), 0);
    terms.push_back({std::move(e), embedding(t.coeff)});
  }
  return from_terms(std::move(target), std::move(terms));
}

Poly Poly::recast(RingPtr target) const {
  if (!(*target->field_ptr() == field()))
    throw PreconditionError("recast requires the same field");
  Poly r(target);
  for (const auto& t : terms_) {
    Exponents e = t.exps;
    e.resize(target->nvars(), 0);
    if (!target->laurent())
      for (auto x : e)
        if (x < 0) throw PreconditionError("negative exponent in a non-Laurent ring");
    r.terms_.push_back({std::move(e), t.coeff});
  }
  r.normalize();
  return r;
}

namespace {

std::string format_coefficient(const Field& F, const Scalar& c, bool& negative) {
  negative = false;
  if (F.kind() == FieldKind::prime) {
    std::int64_t v = c.code();
    if (v > F.characteristic() / 2) {
      negative = true;
      v = F.characteristic() - v;
    }
    return std::to_string(v);
  }
  if (F.kind() == FieldKind::rationals) {
    mpq_class q = c.rational();
    if (sgn(q) < 0) {
      negative = true;
      q = -q;
    }
    return q.get_str();
  }
  std::string s = F.format(c);
  if (s.find('+') != std::string::npos) return "(" + s + ")";
  return s;
}

}  // namespace

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const Term*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](const Term* a, const Term* b) {
    return compare_monomials(a->exps, b->exps, MonomialOrder::grlex) > 0;
  });
  std::string out;
  for (std::size_t idx = 0; idx < order.size(); ++idx) {
    const Term& t = *order[idx];
    bool negative = false;
    std::string coeff = format_coefficient(field(), t.coeff, negative);
    std::string mono;
    for (std::size_t k = 0; k < t.exps.size(); ++k) {
      if (t.exps[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->variables()[k];
      if (t.exps[k] != 1) mono += "^" + std::to_string(t.exps[k]);
    }
    std::string body;
    if (mono.empty()) {
      body = coeff;
    } else if (coeff == "1") {
      body = mono;
    } else {
      body = coeff + "*" + mono;
    }
    if (idx == 0) {
      out += negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(const RingPtr& ring, std::string_view text) : ring_(ring), text_(text) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial '" + std::string(text_) + "': " + what, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool starts_factor() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  Poly expr() {
    Poly acc(ring_);
    bool first = true;
    while (true) {
      bool negative = false;
      if (peek('+') || peek('-')) {
        negative = text_[pos_] == '-';
        ++pos_;
      } else if (!first) {
        break;
      }
      Poly t = term();
      acc = negative ? acc - t : acc + t;
      first = false;
      skip_ws();
      if (!(peek('+') || peek('-'))) break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc *= factor();
      } else if (peek('/')) {
        ++pos_;
        const std::size_t at = pos_;
        Poly d = factor();
        if (!d.is_constant() || d.is_zero()) {
          pos_ = at;
          fail("division is only allowed by nonzero constants");
        }
        acc = acc.scaled(ring_->field().inv(d.constant_coefficient()));
      } else if (starts_factor()) {
        acc *= factor();  // implicit multiplication, e.g. "2x"
      } else {
        break;
      }
    }
    return acc;
  }

  Poly factor() {
    Poly base = primary();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      bool negative = false;
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
        negative = text_[pos_] == '-';
        ++pos_;
      }
      if (peek('(')) {  // allow x^(-1)
        ++pos_;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '-') {
          negative = !negative;
          ++pos_;
        }
        const long long e = integer();
        if (!peek(')')) fail("expected ')'");
        ++pos_;
        return power(base, negative ? -e : e);
      }
      const long long e = integer();
      return power(base, negative ? -e : e);
    }
    return base;
  }

  Poly power(const Poly& base, long long e) {
    if (e < 0) {
      if (!base.is_unit()) fail("negative power of a non-unit");
      if (!base.is_constant() && !ring_->laurent()) fail("negative exponent requires a Laurent ring");
    }
    return base.pow(e);
  }

  long long integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    if (pos_ - start > 9) fail("exponent too large");
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }

  Poly primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const mpz_class n(std::string(text_.substr(start, pos_ - start)));
      return Poly::constant(ring_, ring_->field().from_mpz(n));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      if (auto idx = ring_->variable_index(name)) return Poly::variable(ring_, *idx);
      if (name == "u" && ring_->field().kind() == FieldKind::extension)
        return Poly::constant(ring_, ring_->field().generator());
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  const RingPtr& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const RingPtr& ring, std::string_view text) { return PolyParser(ring, text).parse(); }

Poly laurent_normalize(const Poly& f) {
  if (f.is_zero()) return f;
  Exponents shift = f.min_exponents();
  for (auto& e : shift) e = -e;
  if (!f.ring()->laurent()) {
    // Ordinary rings: only strip common monomial factors if the ring allows
    // it, which it does not. Leave unchanged.
    return f;
  }
  return f.shifted(shift);
}

Poly normalize_associate(const Poly& f) {
  if (f.is_zero()) return f;
  Poly g = f.ring()->laurent() ? laurent_normalize(f) : f;
  const Scalar lc = g.leading_term(MonomialOrder::grlex).coeff;
  return g.scaled(g.field().inv(lc));
}

int univariate_degree(const Poly& f) {
  if (f.ring()->nvars() != 1) throw ScopeError("univariate operation on " + f.ring()->describe());
  if (f.is_zero()) return -1;
  return f.terms().back().exps[0];
}

Scalar univariate_leading(const Poly& f) {
  if (f.is_zero()) return f.field().zero();
  return f.terms().back().coeff;
}

std::pair<Poly, Poly> univariate_divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  if (a.has_negative_exponents() || b.has_negative_exponents())
    throw PreconditionError("univariate division needs non-negative exponents");
  const RingPtr& R = a.ring();
  const Field& F = a.field();
  Poly q(R), r = a;
  const int db = univariate_degree(b);
  const Scalar lb_inv = F.inv(univariate_leading(b));
  while (!r.is_zero() && univariate_degree(r) >= db) {
    const int shift = univariate_degree(r) - db;
    const Scalar c = F.mul(univariate_leading(r), lb_inv);
    Poly m = Poly::monomial(R, Exponents{shift}, c);
    q += m;
    r -= m * b;
  }
  return {q, r};
}

Poly univariate_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = univariate_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.scaled(a.field().inv(univariate_leading(a)));
}

}  // namespace jumploci
