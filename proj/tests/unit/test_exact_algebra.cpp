#include "doctest.h"

#include <random>

#include "jumploci/errors.hpp"
#include "jumploci/groebner.hpp"
#include "jumploci/ideal.hpp"
#include "jumploci/points.hpp"
#include "jumploci/smith.hpp"

using namespace jumploci;

namespace {

RingPtr ring(FieldPtr f, std::vector<std::string> vars, bool laurent = false) {
  return Ring::make(std::move(f), std::move(vars), laurent);
}

PolyMatrix mat(const RingPtr& R, std::size_t rows, std::size_t cols, std::vector<std::string> entries) {
  PolyMatrix m(R, rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i) m.at(i / cols, i % cols) = parse_poly(R, entries[i]);
  return m;
}

}  // namespace

TEST_CASE("fields") {
  auto f5 = Field::prime(5);
  CHECK(f5->characteristic() == 5);
  CHECK(f5->size() == 5);
  auto f4 = Field::extension(2, 2);
  CHECK(f4->modulus() == std::vector<std::int64_t>{1, 1, 1});
  auto q = Field::rationals();
  CHECK(q->characteristic() == 0);
  CHECK_THROWS_AS(Field::prime(6), PreconditionError);
  CHECK_THROWS_AS(Field::extension(2, std::vector<std::int64_t>{1, 0, 1}), PreconditionError);

  // Every nonzero element of F_9 has an inverse and u satisfies its modulus.
  auto f9 = Field::galois(9);
  for (std::int64_t c = 1; c < 9; ++c) CHECK(f9->is_one(f9->mul(f9->element(c), f9->inv(f9->element(c)))));
  const auto& mod = f9->modulus();
  Scalar acc = f9->zero();
  for (std::size_t k = 0; k < mod.size(); ++k)
    acc = f9->add(acc, f9->mul(f9->from_int(mod[k]), f9->pow(f9->generator(), static_cast<long long>(k))));
  CHECK(f9->is_zero(acc));
}

TEST_CASE("embedding F_p into F_{p^2} is a ring map") {
  auto f4 = Field::galois(4), f16 = Field::galois(16);
  Embedding e(f4, f16);
  for (std::int64_t a = 0; a < 4; ++a)
    for (std::int64_t b = 0; b < 4; ++b) {
      auto x = f4->element(a), y = f4->element(b);
      CHECK(f16->equal(e(f4->mul(x, y)), f16->mul(e(x), e(y))));
      CHECK(f16->equal(e(f4->add(x, y)), f16->add(e(x), e(y))));
    }
}

TEST_CASE("polynomial parsing and printing") {
  auto R = ring(Field::rationals(), {"x", "y"});
  CHECK(parse_poly(R, "(x+y)^2").to_string() == "x^2 + 2*x*y + y^2");
  CHECK(parse_poly(R, "2x - 3/2*y").to_string() == "2*x - 3/2*y");
  CHECK_THROWS_AS(parse_poly(R, "x^-1"), ParseError);
  CHECK_THROWS_AS(parse_poly(R, "x + * y"), ParseError);
  auto L = ring(Field::prime(7), {"t"}, true);
  CHECK((parse_poly(L, "t^-1") * parse_poly(L, "t")).to_string() == "1");
  CHECK(parse_poly(L, "t^2 - t + 1").to_string() == "t^2 - t + 1");
}

TEST_CASE("matrix rank") {
  auto f5 = Field::prime(5);
  ScalarMatrix id = ScalarMatrix::identity(f5, 2);
  CHECK(matrix_rank(id) == 2);
  CHECK(matrix_rank(ScalarMatrix(f5, 2, 2)) == 0);
  ScalarMatrix m(f5, 2, 2);
  m.at(0, 0) = f5->from_int(1);
  m.at(0, 1) = f5->from_int(2);
  m.at(1, 0) = f5->from_int(2);
  m.at(1, 1) = f5->from_int(4);
  CHECK(matrix_rank(m) == 1);
  CHECK(matrix_rank(ScalarMatrix(f5, 0, 3)) == 0);
}

TEST_CASE("rank agrees with minors on random small matrices") {
  std::mt19937_64 rng(7);
  for (auto field : {Field::prime(3), Field::prime(5), Field::rationals()}) {
    auto R = ring(field, {});
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
      ScalarMatrix s(field, rows, cols);
      PolyMatrix p(R, rows, cols);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
          const long long v = static_cast<long long>(rng() % 5) - 2;
          s.at(r, c) = field->from_int(rng() % 3 == 0 ? 0 : v);
          p.at(r, c) = Poly::constant(R, s.at(r, c));
        }
      const std::size_t rk = matrix_rank(s);
      for (std::size_t k = 1; k <= std::min(rows, cols); ++k) CHECK((k <= rk) == !nonzero_minors(p, k).empty());
    }
  }
}

TEST_CASE("minor ideals") {
  auto R = ring(Field::rationals(), {"x"});
  auto d = mat(R, 2, 2, {"x", "0", "0", "x"});
  CHECK(minors_ideal(d, 1).to_strings() == std::vector<std::string>{"x"});
  CHECK(minors_ideal(d, 2).to_strings() == std::vector<std::string>{"x^2"});
  CHECK(minors_ideal(d, 0).to_strings() == std::vector<std::string>{"1"});
  CHECK(minors_ideal(d, 3).is_zero_ideal());
}

TEST_CASE("smith normal form") {
  auto L = ring(Field::rationals(), {"t"}, true);
  auto check_form = [](const PolyMatrix& a, const SmithForm& s) {
    CHECK(s.U * a * s.V == s.D);
    CHECK(s.V * s.V_inverse == PolyMatrix::identity(a.ring(), a.cols()));
    CHECK(determinant(s.U).is_unit());
    CHECK(determinant(s.V).is_unit());
    for (std::size_t k = 0; k + 1 < s.divisors.size(); ++k) {
      if (s.divisors[k + 1].is_zero()) continue;
      REQUIRE(!s.divisors[k].is_zero());
      CHECK(univariate_divmod(s.divisors[k + 1], s.divisors[k]).second.is_zero());
    }
  };
  auto a = mat(L, 2, 2, {"t-1", "0", "0", "(t-1)^2"});
  auto s = smith_normal_form(a);
  check_form(a, s);
  CHECK(s.divisors[0].to_string() == "t - 1");
  CHECK(s.divisors[1].to_string() == "t^2 - 2*t + 1");

  auto id = PolyMatrix::identity(L, 2);
  auto si = smith_normal_form(id);
  CHECK(si.divisors[0].to_string() == "1");
  CHECK(si.divisors[1].to_string() == "1");

  auto row = mat(L, 1, 2, {"1 - t + t^2", "-(1 - t + t^2)"});
  auto sr = smith_normal_form(row);
  check_form(row, sr);
  // Oracle: the gcd of the two entries.
  CHECK(sr.divisors[0] == univariate_gcd(row.at(0, 0), -row.at(0, 1)));
  CHECK(sr.divisors[0].to_string() == "t^2 - t + 1");

  auto laurent = mat(L, 2, 3, {"t^-1 - 1", "t^2", "t^-2*(t+1)", "t^3 - t", "0", "1 + t"});
  check_form(laurent, smith_normal_form(laurent));

  CHECK_THROWS_AS(smith_normal_form(PolyMatrix(ring(Field::rationals(), {"x", "y"}, true), 1, 1)), ScopeError);
}

TEST_CASE("smith normal form on random matrices") {
  std::mt19937_64 rng(11);
  auto L = ring(Field::prime(5), {"t"}, true);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 3;
    PolyMatrix a(L, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        std::vector<Term> terms;
        for (int e = -1; e <= 2; ++e)
          if (rng() % 2) terms.push_back({Exponents{e}, L->field().from_int(static_cast<long long>(rng() % 5))});
        a.at(r, c) = Poly::from_terms(L, terms);
      }
    auto s = smith_normal_form(a);
    CHECK(s.U * a * s.V == s.D);
    CHECK(determinant(s.U).is_unit());
    CHECK(determinant(s.V).is_unit());
    for (const auto& d : s.divisors)
      if (!d.is_zero()) CHECK(d.min_degree(0) == 0);
  }
}

TEST_CASE("buchberger") {
  auto R = ring(Field::rationals(), {"x", "y"});
  auto x = parse_poly(R, "x"), y = parse_poly(R, "y");
  CHECK(buchberger(Ideal(ring(Field::rationals(), {"x"}), {parse_poly(ring(Field::rationals(), {"x"}), "x")}))
            .to_strings() == std::vector<std::string>{"x"});
  auto xy = buchberger(Ideal(R, {x, y}));
  CHECK(xy.generators().size() == 2);
  auto gb = buchberger(Ideal(R, {parse_poly(R, "y - x^2"), parse_poly(R, "x*y")}));
  // grlex makes x^2 the lead of y - x^2, so S(y - x^2, xy) = -y^2.
  CHECK(gb.to_strings() == std::vector<std::string>{"y^2", "x*y", "x^2 - y"});
  CHECK(ideal_contains(gb, parse_poly(R, "x^3")));
  // With y the lead (lex, y > x) the S-polynomial is x(y - x^2) - xy = -x^3.
  auto Ryx = Ring::make(Field::rationals(), {"y", "x"}, false, MonomialOrder::lex);
  auto lex = buchberger(Ideal(Ryx, {parse_poly(Ryx, "y - x^2"), parse_poly(Ryx, "x*y")}));
  bool has_x3 = false;
  for (const auto& g : lex.generators()) has_x3 = has_x3 || g.to_string() == "x^3";
  CHECK(has_x3);
  for (const auto& f : gb.generators())
    for (const auto& g : gb.generators())
      CHECK(reduce(s_polynomial(f, g), gb.generators()).is_zero());
  CHECK(ideal_contains(gb, parse_poly(R, "y - x^2")));
  CHECK(ideal_contains(gb, parse_poly(R, "x*y")));
  CHECK(!ideal_contains(gb, x));
  CHECK_THROWS_AS(buchberger(Ideal(ring(Field::rationals(), {"t"}, true), {})), PreconditionError);
  auto big = ring(Field::rationals(), {"a", "b", "c", "d"});
  CHECK_THROWS_AS(buchberger(Ideal(big, {parse_poly(big, "a")})), ScopeError);
}

TEST_CASE("syzygies") {
  auto R = ring(Field::rationals(), {"x", "y"});
  auto koszul = syzygy_matrix(mat(R, 1, 2, {"x", "y"}));
  CHECK(koszul.cols() == 1);
  CHECK((mat(R, 1, 2, {"x", "y"}) * koszul).is_zero());
  const Poly y = parse_poly(R, "y"), x = parse_poly(R, "x");
  const bool plus = koszul.at(0, 0) == y && koszul.at(1, 0) == -x;
  const bool minus = koszul.at(0, 0) == -y && koszul.at(1, 0) == x;
  CHECK((plus || minus));

  CHECK(syzygy_matrix(PolyMatrix::identity(R, 2)).cols() == 0);

  auto m = mat(R, 1, 2, {"x^2", "x*y"});
  auto s = syzygy_matrix(m);
  CHECK((m * s).is_zero());
  // Completeness: (y, -x) generates; every column is a multiple and (y,-x) is in the span.
  auto gb = module_groebner(s);
  CHECK(module_contains(gb, {parse_poly(R, "y"), parse_poly(R, "-x")}));
  CHECK(!module_contains(gb, {parse_poly(R, "1"), parse_poly(R, "0")}));
}

TEST_CASE("laurent syzygies") {
  auto L = ring(Field::rationals(), {"a", "b"}, true);
  auto d1 = mat(L, 1, 2, {"a - 1", "b - 1"});
  auto s = syzygy_matrix(d1);
  CHECK((d1 * s).is_zero());
  CHECK(s.cols() == 1);
  auto m = mat(L, 1, 2, {"a^-1", "b^-1"});
  auto s2 = syzygy_matrix(m);
  CHECK((m * s2).is_zero());
  CHECK(s2.cols() == 1);
}

TEST_CASE("standard monomials") {
  auto R = ring(Field::rationals(), {"x", "y"});
  auto gb = module_groebner(mat(R, 1, 2, {"x", "y"}));
  CHECK(standard_monomial_count(gb) == 1u);
  auto gb2 = module_groebner(mat(R, 1, 2, {"x^2", "y^3"}));
  CHECK(standard_monomial_count(gb2) == 6u);
  auto gb3 = module_groebner(mat(R, 1, 1, {"x"}));
  CHECK(!standard_monomial_count(gb3).has_value());
}

TEST_CASE("zero loci") {
  auto f3 = Field::prime(3), f5 = Field::prime(5);
  auto R = ring(Field::rationals(), {"x"});
  CHECK(zero_locus_points(Ideal(R, {parse_poly(R, "x")}), f3, false).to_strings() ==
        std::vector<std::string>{"(0)"});
  CHECK(zero_locus_points(Ideal(R), f3, false).size() == 3);
  auto roots = zero_locus_points(Ideal(R, {parse_poly(R, "x^2+1")}), f5, false);
  // Oracle: direct evaluation.
  PointSet expect(f5, 1);
  for (long long v = 0; v < 5; ++v)
    if ((v * v + 1) % 5 == 0) expect.insert({f5->from_int(v)});
  CHECK(roots == expect);
  CHECK(roots.to_strings() == std::vector<std::string>{"(2)", "(3)"});
  CHECK_THROWS_AS(zero_locus_points(Ideal(R), Field::rationals(), false), ScopeError);

  // Intersection property.
  auto R2 = ring(Field::prime(5), {"x", "y"});
  auto f = parse_poly(R2, "x*y - 1"), g = parse_poly(R2, "x + y - 2");
  auto both = zero_locus_points(Ideal(R2, {f, g}), f5, false);
  CHECK(both == zero_locus_points(Ideal(R2, {f}), f5, false).intersected(zero_locus_points(Ideal(R2, {g}), f5, false)));
  CHECK(both.to_strings() == std::vector<std::string>{"(1, 1)"});
}

TEST_CASE("parallel enumeration matches serial") {
  auto f = Field::galois(9);
  auto R = ring(Field::prime(3), {"x", "y", "z", "w"});
  auto I = Ideal(R, {parse_poly(R, "x*y - z*w")});
  auto pts = zero_locus_points(I, f, false);
  std::size_t count = 0;
  Embedding e(R->field_ptr(), f);
  for_each_point(f, 4, false, [&](const Coords& p) {
    if (f->is_zero(I.generators()[0].evaluate(p, e))) ++count;
  });
  CHECK(pts.size() == count);
}
