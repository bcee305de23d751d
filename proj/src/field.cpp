#include "jumploci/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

#include "jumploci/errors.hpp"

namespace jumploci {

namespace {

constexpr std::int64_t kMaxExtensionSize = 1 << 16;

std::int64_t mod(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = mod(a, p);
  while (new_r != 0) {
    std::int64_t quo = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - quo * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - quo * new_r);
  }
  if (r != 1) throw PreconditionError("division by zero in prime field");
  return mod(t, p);
}

std::int64_t pow_int(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Polynomials over F_p as coefficient vectors, low-to-high, trimmed.
using PolyP = std::vector<std::int64_t>;

void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyP polyp_mod(PolyP a, const PolyP& b, std::int64_t p) {
  trim(a);
  const std::int64_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::int64_t c = mod(a.back() * lead_inv, p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k)
      a[shift + k] = mod(a[shift + k] - c * b[k], p);
    trim(a);
  }
  return a;
}

PolyP polyp_mulmod(const PolyP& a, const PolyP& b, const PolyP& modulus,
                   std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  PolyP r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = mod(r[i + j] + a[i] * b[j], p);
  return polyp_mod(std::move(r), modulus, p);
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

std::int64_t Scalar::code() const {
  if (const auto* c = std::get_if<std::int64_t>(&value_)) return *c;
  throw PreconditionError("rational scalar used as a finite-field element");
}

mpq_class Scalar::rational() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return *q;
  return mpq_class(static_cast<long>(std::get<std::int64_t>(value_)));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!a.is_rational() && !b.is_rational()) return a.code() == b.code();
  return a.rational() == b.rational();
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (!a.is_rational() && !b.is_rational()) return a.code() <=> b.code();
  const int c = cmp(a.rational(), b.rational());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<std::int64_t, int> prime_power(std::int64_t q) {
  if (q < 2) throw PreconditionError("field size must be a prime power, got " + std::to_string(q));
  const auto factors = prime_factors(q);
  if (factors.size() != 1)
    throw PreconditionError("field size must be a prime power, got " + std::to_string(q));
  int m = 0;
  for (std::int64_t r = q; r > 1; r /= factors[0]) ++m;
  return {factors[0], m};
}

bool is_irreducible_mod_p(const std::vector<std::int64_t>& poly, std::int64_t p) {
  PolyP f;
  for (auto c : poly) f.push_back(mod(c, p));
  trim(f);
  if (f.size() < 2) return false;
  const int deg = static_cast<int>(f.size()) - 1;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (int k = 1; 2 * k <= deg; ++k) {
    const std::int64_t count = pow_int(p, k);
    for (std::int64_t code = 0; code < count; ++code) {
      PolyP g(k + 1, 0);
      std::int64_t c = code;
      for (int j = 0; j < k; ++j) {
        g[j] = c % p;
        c /= p;
      }
      g[k] = 1;
      if (polyp_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

FieldPtr Field::rationals() {
  static const FieldPtr q = [] {
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = FieldKind::rationals;
    return FieldPtr(f);
  }();
  return q;
}

FieldPtr Field::prime(std::int64_t p) {
  if (!is_prime(p)) throw PreconditionError("not a prime: " + std::to_string(p));
  if (p >= (std::int64_t{1} << 31))
    throw ScopeError("prime fields are limited to p < 2^31");
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = FieldKind::prime;
  f->p_ = p;
  f->m_ = 1;
  f->q_ = p;
  return f;
}

FieldPtr Field::extension(std::int64_t p, int m) {
  if (!is_prime(p)) throw PreconditionError("not a prime: " + std::to_string(p));
  if (m < 1) throw PreconditionError("extension degree must be >= 1");
  if (m == 1) return prime(p);
  // Cache: building log tables is not free and fields are requested often.
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, int>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find({p, m}); it != cache.end()) return it->second;
  const std::int64_t count = pow_int(p, m);
  for (std::int64_t code = 0; code < count; ++code) {
    std::vector<std::int64_t> mod_poly(m + 1, 0);
    std::int64_t c = code;
    for (int j = 0; j < m; ++j) {
      mod_poly[j] = c % p;
      c /= p;
    }
    mod_poly[m] = 1;
    if (is_irreducible_mod_p(mod_poly, p)) {
      auto f = extension(p, mod_poly);
      cache[{p, m}] = f;
      return f;
    }
  }
  throw Error("no irreducible polynomial found");  // unreachable
}

FieldPtr Field::extension(std::int64_t p, std::vector<std::int64_t> modulus) {
  if (!is_prime(p)) throw PreconditionError("not a prime: " + std::to_string(p));
  for (auto& c : modulus) c = mod(c, p);
  trim(modulus);
  if (modulus.size() < 2) throw PreconditionError("modulus must have degree >= 1");
  if (modulus.back() != 1) throw PreconditionError("modulus must be monic");
  const int m = static_cast<int>(modulus.size()) - 1;
  if (m == 1) return prime(p);
  if (!is_irreducible_mod_p(modulus, p))
    throw PreconditionError("modulus is reducible over GF(" + std::to_string(p) + ")");
  long double approx = 1;
  for (int i = 0; i < m; ++i) approx *= static_cast<long double>(p);
  if (approx > static_cast<long double>(kMaxExtensionSize))
    throw ScopeError("extension fields are limited to 65536 elements");
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = FieldKind::extension;
  f->p_ = p;
  f->m_ = m;
  f->q_ = pow_int(p, m);
  f->modulus_ = std::move(modulus);
  f->build_tables();
  return f;
}

FieldPtr Field::galois(std::int64_t q) {
  const auto [p, m] = prime_power(q);
  return m == 1 ? prime(p) : extension(p, m);
}

void Field::build_tables() {
  const std::int64_t order = q_ - 1;
  const auto factors = prime_factors(order);
  auto powmod = [&](const PolyP& base, std::int64_t e) {
    PolyP result{1}, b = base;
    while (e > 0) {
      if (e & 1) result = polyp_mulmod(result, b, modulus_, p_);
      b = polyp_mulmod(b, b, modulus_, p_);
      e >>= 1;
    }
    return result;
  };
  PolyP primitive;
  for (std::int64_t code = 2; code < q_ && primitive.empty(); ++code) {
    PolyP g = digits(code);
    trim(g);
    bool ok = true;
    for (auto l : factors) {
      PolyP r = powmod(g, order / l);
      if (r.size() == 1 && r[0] == 1) {
        ok = false;
        break;
      }
    }
    if (ok) primitive = g;
  }
  if (primitive.empty()) primitive = {0, 1};  // q = 2^1 never reaches here
  exp_.assign(order, 0);
  log_.assign(q_, -1);
  PolyP cur{1};
  for (std::int64_t k = 0; k < order; ++k) {
    PolyP padded = cur;
    padded.resize(m_, 0);
    const auto c = static_cast<std::int32_t>(from_digits(padded));
    exp_[k] = c;
    log_[c] = static_cast<std::int32_t>(k);
    cur = polyp_mulmod(cur, primitive, modulus_, p_);
  }
}

std::vector<std::int64_t> Field::digits(std::int64_t code) const {
  std::vector<std::int64_t> d(m_, 0);
  for (int j = 0; j < m_; ++j) {
    d[j] = code % p_;
    code /= p_;
  }
  return d;
}

std::int64_t Field::from_digits(const std::vector<std::int64_t>& d) const {
  std::int64_t code = 0;
  for (int j = static_cast<int>(d.size()) - 1; j >= 0; --j) code = code * p_ + d[j];
  return code;
}

Scalar Field::zero() const {
  return kind_ == FieldKind::rationals ? Scalar::from_rational(0) : Scalar::from_code(0);
}

Scalar Field::one() const {
  return kind_ == FieldKind::rationals ? Scalar::from_rational(1) : Scalar::from_code(1);
}

Scalar Field::from_int(long long n) const {
  if (kind_ == FieldKind::rationals) return Scalar::from_rational(mpq_class(mpz_class(std::to_string(n))));
  return Scalar::from_code(mod(static_cast<std::int64_t>(n % p_), p_));
}

Scalar Field::from_mpz(const mpz_class& n) const {
  if (kind_ == FieldKind::rationals) return Scalar::from_rational(mpq_class(n));
  mpz_class r = n % p_;
  if (r < 0) r += p_;
  return Scalar::from_code(r.get_si());
}

Scalar Field::from_mpq(const mpq_class& a) const {
  if (kind_ == FieldKind::rationals) return Scalar::from_rational(a);
  const Scalar den = from_mpz(a.get_den());
  if (is_zero(den))
    throw PreconditionError("denominator of " + a.get_str() + " vanishes in " + name());
  return div(from_mpz(a.get_num()), den);
}

Scalar Field::generator() const {
  if (kind_ != FieldKind::extension) throw PreconditionError(name() + " has no generator u");
  return Scalar::from_code(p_);
}

Scalar Field::element(std::int64_t code) const {
  if (!is_finite() || code < 0 || code >= q_)
    throw PreconditionError("element code out of range for " + name());
  return Scalar::from_code(code);
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  switch (kind_) {
    case FieldKind::rationals:
      return Scalar::from_rational(a.rational() + b.rational());
    case FieldKind::prime: {
      std::int64_t s = a.code() + b.code();
      return Scalar::from_code(s >= p_ ? s - p_ : s);
    }
    case FieldKind::extension: {
      std::int64_t x = a.code(), y = b.code(), r = 0, place = 1;
      for (int j = 0; j < m_; ++j) {
        std::int64_t d = x % p_ + y % p_;
        if (d >= p_) d -= p_;
        r += d * place;
        place *= p_;
        x /= p_;
        y /= p_;
      }
      return Scalar::from_code(r);
    }
  }
  return {};
}

Scalar Field::neg(const Scalar& a) const {
  switch (kind_) {
    case FieldKind::rationals:
      return Scalar::from_rational(-a.rational());
    case FieldKind::prime:
      return Scalar::from_code(a.code() == 0 ? 0 : p_ - a.code());
    case FieldKind::extension: {
      std::int64_t x = a.code(), r = 0, place = 1;
      for (int j = 0; j < m_; ++j) {
        const std::int64_t d = x % p_;
        r += (d == 0 ? 0 : p_ - d) * place;
        place *= p_;
        x /= p_;
      }
      return Scalar::from_code(r);
    }
  }
  return {};
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const { return add(a, neg(b)); }

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  switch (kind_) {
    case FieldKind::rationals:
      return Scalar::from_rational(a.rational() * b.rational());
    case FieldKind::prime:
      return Scalar::from_code((a.code() * b.code()) % p_);
    case FieldKind::extension: {
      if (a.code() == 0 || b.code() == 0) return Scalar::from_code(0);
      const std::int64_t order = q_ - 1;
      return Scalar::from_code(exp_[(log_[a.code()] + log_[b.code()]) % order]);
    }
  }
  return {};
}

Scalar Field::inv(const Scalar& a) const {
  if (is_zero(a)) throw PreconditionError("division by zero in " + name());
  switch (kind_) {
    case FieldKind::rationals:
      return Scalar::from_rational(1 / a.rational());
    case FieldKind::prime:
      return Scalar::from_code(inv_mod(a.code(), p_));
    case FieldKind::extension: {
      const std::int64_t order = q_ - 1;
      return Scalar::from_code(exp_[(order - log_[a.code()]) % order]);
    }
  }
  return {};
}

Scalar Field::div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

Scalar Field::pow(const Scalar& a, long long e) const {
  if (e < 0) return pow(inv(a), -e);
  Scalar result = one(), base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

bool Field::is_zero(const Scalar& a) const {
  if (a.is_rational()) return sgn(a.rational()) == 0;
  return a.code() == 0;
}

bool Field::is_one(const Scalar& a) const {
  if (a.is_rational()) return a.rational() == 1;
  return a.code() == 1;
}

bool Field::equal(const Scalar& a, const Scalar& b) const { return a == b; }

std::string Field::format(const Scalar& a) const {
  switch (kind_) {
    case FieldKind::rationals:
      return a.rational().get_str();
    case FieldKind::prime:
      return std::to_string(a.code());
    case FieldKind::extension: {
      const auto d = digits(a.code());
      std::string out;
      for (int j = m_ - 1; j >= 0; --j) {
        if (d[j] == 0) continue;
        if (!out.empty()) out += "+";
        if (j == 0) {
          out += std::to_string(d[j]);
          continue;
        }
        if (d[j] != 1) out += std::to_string(d[j]) + "*";
        out += "u";
        if (j > 1) out += "^" + std::to_string(j);
      }
      return out.empty() ? "0" : out;
    }
  }
  return {};
}

std::string Field::name() const {
  switch (kind_) {
    case FieldKind::rationals:
      return "Q";
    case FieldKind::prime:
      return "GF(" + std::to_string(p_) + ")";
    case FieldKind::extension:
      return "GF(" + std::to_string(p_) + "^" + std::to_string(m_) + ")";
  }
  return {};
}

bool operator==(const Field& a, const Field& b) {
  return a.kind_ == b.kind_ && a.p_ == b.p_ && a.m_ == b.m_ && a.modulus_ == b.modulus_;
}

FieldPtr parse_field(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "Q" || s == "QQ") return Field::rationals();
  auto parse_int = [&](const std::string& t) -> std::int64_t {
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw ParseError("bad field specification '" + text + "'");
    return std::stoll(t);
  };
  std::string body;
  if (s.rfind("GF(", 0) == 0 && s.back() == ')') {
    body = s.substr(3, s.size() - 4);
  } else if (s.size() > 1 && (s[0] == 'F' || s[0] == 'f')) {
    body = s.substr(1);
  } else {
    body = s;
  }
  if (auto caret = body.find('^'); caret != std::string::npos) {
    const auto p = parse_int(body.substr(0, caret));
    const auto m = parse_int(body.substr(caret + 1));
    return Field::extension(p, static_cast<int>(m));
  }
  return Field::galois(parse_int(body));
}

bool Embedding::exists(const Field& from, const Field& to) {
  if (from == to) return true;
  if (!to.is_finite()) return false;
  if (from.kind() == FieldKind::rationals) return true;
  return from.characteristic() == to.characteristic() && to.degree() % from.degree() == 0;
}

Embedding::Embedding(FieldPtr from, FieldPtr to) : from_(std::move(from)), to_(std::move(to)) {
  if (*from_ == *to_) {
    identity_ = true;
    return;
  }
  if (!exists(*from_, *to_))
    throw PreconditionError("no field embedding " + from_->name() + " -> " + to_->name());
  if (from_->kind() == FieldKind::rationals) return;
  if (from_->kind() == FieldKind::prime) {
    for (std::int64_t c = 0; c < from_->size(); ++c) table_.push_back(Scalar::from_code(c));
    return;
  }
  // Find the first root of the source modulus in the target.
  const auto& modulus = from_->modulus();
  Scalar root;
  bool found = false;
  for (std::int64_t c = 0; c < to_->size() && !found; ++c) {
    const Scalar x = to_->element(c);
    Scalar acc = to_->zero();
    for (auto it = modulus.rbegin(); it != modulus.rend(); ++it)
      acc = to_->add(to_->mul(acc, x), to_->from_int(*it));
    if (to_->is_zero(acc)) {
      root = x;
      found = true;
    }
  }
  if (!found) throw Error("embedding root not found");
  const std::int64_t p = from_->characteristic();
  for (std::int64_t c = 0; c < from_->size(); ++c) {
    Scalar acc = to_->zero(), power = to_->one();
    std::int64_t rest = c;
    for (int j = 0; j < from_->degree(); ++j) {
      acc = to_->add(acc, to_->mul(to_->from_int(rest % p), power));
      power = to_->mul(power, root);
      rest /= p;
    }
    table_.push_back(acc);
  }
}

Scalar Embedding::operator()(const Scalar& a) const {
  if (identity_) return a;
  if (from_->kind() == FieldKind::rationals) return to_->from_mpq(a.rational());
  return table_[a.code()];
}

}  // namespace jumploci
