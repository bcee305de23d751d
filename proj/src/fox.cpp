#include "jumploci/fox.hpp"

#include <cctype>

#include "jumploci/errors.hpp"

namespace jumploci {

Word free_reduce(const Word& w) {
  Word out;
  for (const auto& l : w) {
    if (!out.empty() && out.back().generator == l.generator && out.back().exponent == -l.exponent)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word inverse(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->generator, -it->exponent});
  return out;
}

namespace {

std::string swap_case(std::string s) {
  if (!s.empty()) {
    const auto c = static_cast<unsigned char>(s[0]);
    s[0] = static_cast<char>(std::isupper(c) ? std::tolower(c) : std::toupper(c));
  }
  return s;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

class WordParser {
 public:
  WordParser(const std::vector<std::string>& gens, std::string_view text) : gens_(gens), text_(text) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      names_.push_back({gens[g], {g, 1}});
      names_.push_back({swap_case(gens[g]), {g, -1}});
    }
  }

  Word relation() {
    Word w = word();
    skip();
    if (peek() == '=') {
      ++pos_;
      Word rhs = word();
      const Word inv = inverse(rhs);
      w.insert(w.end(), inv.begin(), inv.end());
    }
    skip();
    if (pos_ < text_.size()) throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    return free_reduce(w);
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Word word() {
    Word w;
    for (;;) {
      skip();
      const char c = peek();
      if (c == '\0' || c == '=' || c == ')' || c == ']' || c == ',') return w;
      Word f = factor();
      w.insert(w.end(), f.begin(), f.end());
      skip();
      if (peek() == '*' || peek() == '.') ++pos_;
    }
  }

  Word factor() {
    Word a = atom();
    skip();
    if (peek() != '^') return a;
    ++pos_;
    skip();
    const std::size_t start = pos_;
    bool negative = false;
    if (peek() == '-' || peek() == '+') negative = text_[pos_++] == '-';
    if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected an integer exponent", start);
    long long n = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      n = n * 10 + (text_[pos_++] - '0');
      if (n > 1'000'000) throw ParseError("exponent too large", start);
    }
    const Word base = negative ? inverse(a) : a;
    Word out;
    for (long long k = 0; k < n; ++k) out.insert(out.end(), base.begin(), base.end());
    return out;
  }

  Word atom() {
    const std::size_t start = pos_;
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Word w = word();
      expect(')', start);
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word u = word();
      expect(',', start);
      Word v = word();
      expect(']', start);
      Word out = u;
      out.insert(out.end(), v.begin(), v.end());
      const Word ui = inverse(u), vi = inverse(v);
      out.insert(out.end(), ui.begin(), ui.end());
      out.insert(out.end(), vi.begin(), vi.end());
      return out;
    }
    if (c == '1') {
      ++pos_;
      return {};
    }
    std::size_t best = 0;
    Letter letter;
    for (const auto& [name, l] : names_)
      if (name.size() > best && text_.substr(pos_, name.size()) == name) {
        best = name.size();
        letter = l;
      }
    if (best == 0) {
      if (c == '\0') throw ParseError("unexpected end of word", pos_);
      throw ParseError(std::string("unknown generator at '") + c + "'", pos_);
    }
    pos_ += best;
    return {letter};
  }

  void expect(char c, std::size_t open) {
    skip();
    if (peek() != c) throw ParseError(std::string("expected '") + c + "' to close the group opened here", open);
    ++pos_;
  }

  const std::vector<std::string>& gens_;
  std::string_view text_;
  std::vector<std::pair<std::string, Letter>> names_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(const std::vector<std::string>& generators, std::string_view text) {
  return WordParser(generators, text).relation();
}

GroupPresentation::GroupPresentation(std::vector<std::string> generators, std::vector<Word> relators)
    : generators_(std::move(generators)) {
  if (generators_.empty()) throw PreconditionError("a presentation needs at least one generator");
  for (std::size_t g = 0; g < generators_.size(); ++g) {
    if (!is_identifier(generators_[g])) throw PreconditionError("bad generator name '" + generators_[g] + "'");
    for (std::size_t h = 0; h < generators_.size(); ++h) {
      if (h != g && generators_[h] == generators_[g])
        throw PreconditionError("duplicate generator '" + generators_[g] + "'");
      if (generators_[h] == swap_case(generators_[g]))
        throw PreconditionError("generator '" + generators_[h] + "' collides with the inverse of '" + generators_[g] +
                                "'");
    }
  }
  for (auto& r : relators) {
    for (const auto& l : r)
      if (l.generator >= generators_.size() || (l.exponent != 1 && l.exponent != -1))
        throw PreconditionError("relator letter out of range");
    relators_.push_back(free_reduce(r));
  }
}

GroupPresentation GroupPresentation::parse(std::vector<std::string> generators,
                                           const std::vector<std::string>& relators) {
  std::vector<Word> words;
  for (const auto& r : relators) {
    try {
      words.push_back(parse_word(generators, r));
    } catch (const ParseError& e) {
      throw ParseError("relator \"" + r + "\": " + e.what(), e.position());
    }
  }
  return GroupPresentation(std::move(generators), std::move(words));
}

std::string GroupPresentation::format(const Word& w) const {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& l : w) {
    if (!s.empty()) s += ' ';
    s += l.exponent > 0 ? generators_[l.generator] : swap_case(generators_[l.generator]);
  }
  return s;
}

RingPtr alexander_ring(const FieldPtr& field, std::size_t r) {
  std::vector<std::string> vars;
  if (r == 1)
    vars.push_back("t");
  else
    for (std::size_t j = 0; j < r; ++j) vars.push_back("t" + std::to_string(j + 1));
  return Ring::make(field, vars, true);
}

std::vector<long long> nu_image(const Word& w, const NuData& nu) {
  std::vector<long long> v(nu.target.rank, 0);
  for (const auto& l : w) {
    if (l.generator >= nu.source_rank) throw PreconditionError("word uses a generator outside nu's source");
    for (std::size_t j = 0; j < nu.target.rank; ++j) v[j] += l.exponent * nu.free[j][l.generator];
  }
  return v;
}

namespace {

Exponents to_exponents(const std::vector<long long>& v) {
  Exponents e;
  for (auto x : v) e.push_back(static_cast<std::int32_t>(x));
  return e;
}

}  // namespace

Poly abelianize(const Word& w, const NuData& nu, const RingPtr& ring) {
  if (ring->nvars() != nu.target.rank) throw PreconditionError("ring and nu target rank differ");
  return Poly::monomial(ring, to_exponents(nu_image(w, nu)), ring->field().one());
}

Poly fox_derivative(const Word& w, std::size_t j, const NuData& nu, const RingPtr& ring) {
  if (ring->nvars() != nu.target.rank) throw PreconditionError("ring and nu target rank differ");
  if (j >= nu.source_rank) throw PreconditionError("generator index out of range");
  const Field& F = ring->field();
  std::vector<Term> terms;
  std::vector<long long> prefix(nu.target.rank, 0);
  for (const auto& l : w) {
    if (l.generator >= nu.source_rank) throw PreconditionError("word uses a generator outside nu's source");
    if (l.exponent < 0)
      for (std::size_t r = 0; r < prefix.size(); ++r) prefix[r] -= nu.free[r][l.generator];
    if (l.generator == j) terms.push_back({to_exponents(prefix), l.exponent > 0 ? F.one() : F.neg(F.one())});
    if (l.exponent > 0)
      for (std::size_t r = 0; r < prefix.size(); ++r) prefix[r] += nu.free[r][l.generator];
  }
  return Poly::from_terms(ring, std::move(terms));
}

namespace {

void check_free_target(const GroupPresentation& p, const NuData& nu) {
  if (!nu.target.torsion.empty())
    throw PreconditionError("Alexander complexes need nu onto a free abelian group; torsion targets are not supported");
  if (nu.source_rank != p.size())
    throw PreconditionError("nu has source rank " + std::to_string(nu.source_rank) + " but the presentation has " +
                            std::to_string(p.size()) + " generators");
  nu.validate();
}

}  // namespace

FreeChainComplex alexander_complex(const GroupPresentation& p, const NuData& nu, const FieldPtr& field) {
  check_free_target(p, nu);
  const RingPtr S = alexander_ring(field, nu.target.rank);
  const std::size_t n = p.size(), m = p.relators().size();
  PolyMatrix d1(S, 1, n), d2(S, n, m);
  for (std::size_t g = 0; g < n; ++g) d1.at(0, g) = abelianize(Word{{g, 1}}, nu, S) - Poly::from_int(S, 1);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t g = 0; g < n; ++g) d2.at(g, r) = fox_derivative(p.relators()[r], g, nu, S);
  return FreeChainComplex(S, {1, n, m}, {std::move(d1), std::move(d2)});
}

PointSet characteristic_variety_points(const GroupPresentation& p, const NuData& nu, int i, long d,
                                       const FieldPtr& field, const EnumerationLimits& limits) {
  return jump_locus_points(alexander_complex(p, nu, field), i, d, field, true, limits);
}

AlexanderInvariant alexander_invariant(const GroupPresentation& p, const NuData& nu, const FieldPtr& field,
                                       const GroebnerLimits& limits) {
  const FreeChainComplex e = alexander_complex(p, nu, field);
  ModulePresentation h = homology_presentation(e, 1, limits);
  FinitenessVerdict v = is_finite_dimensional(h, limits);
  return {std::move(h), std::move(v)};
}

long long magnus_coefficient(const Word& w, std::size_t i, std::size_t j) {
  // x^e -> 1 + e X + (e = -1 ? X^2 : 0); for i != j only pairs p < q count.
  long long seen_i = 0, total = 0, squares = 0;
  for (const auto& l : w) {
    if (l.generator == j) total += seen_i * l.exponent;
    if (l.generator == i) {
      if (i == j && l.exponent < 0) ++squares;
      seen_i += l.exponent;
    }
  }
  return total + squares;
}

GradedAlgebra quadratic_cup(const GroupPresentation& p, const FieldPtr& field) {
  const std::size_t n = p.size(), m = p.relators().size();
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<long long> sums(n, 0);
    for (const auto& l : p.relators()[r]) sums[l.generator] += l.exponent;
    for (std::size_t g = 0; g < n; ++g)
      if (sums[g] != 0)
        throw PreconditionError("relator " + std::to_string(r + 1) + " (" + p.format(p.relators()[r]) +
                                ") has exponent sum " + std::to_string(sums[g]) + " in " + p.generators()[g]);
  }
  std::map<std::pair<std::size_t, std::size_t>, Vec> pairing;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      Vec v(m, field->zero());
      bool nonzero = false;
      for (std::size_t r = 0; r < m; ++r) {
        v[r] = field->from_int(magnus_coefficient(p.relators()[r], a, b));
        nonzero = nonzero || !field->is_zero(v[r]);
      }
      if (nonzero) pairing[{a, b}] = std::move(v);
    }
  return pairing_cga(field, n, m, pairing);
}

}  // namespace jumploci
