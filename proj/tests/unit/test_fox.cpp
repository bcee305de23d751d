#include "doctest.h"

#include <random>

#include "jumploci/errors.hpp"
#include "jumploci/fox.hpp"

using namespace jumploci;

namespace {

NuData to_free(std::size_t n, std::vector<std::vector<long long>> free) {
  NuData nu;
  nu.source_rank = n;
  nu.target.rank = free.size();
  nu.free = std::move(free);
  return nu;
}

// Independent oracle: peel letters off the left using only the defining
// rules d(uv) = du + nu(u) dv, d(g_j) = 1, d(g_i) = 0, d(g_j^-1) = -nu(g_j)^-1.
Poly fox_oracle(const Word& w, std::size_t j, const NuData& nu, const RingPtr& R) {
  if (w.empty()) return Poly(R);
  const Letter& l = w.front();
  Poly first(R);
  if (l.generator == j)
    first = l.exponent > 0 ? Poly::from_int(R, 1) : -abelianize(Word{{j, 1}}, nu, R).unit_inverse();
  const Word rest(w.begin() + 1, w.end());
  return first + abelianize(Word{l}, nu, R) * fox_oracle(rest, j, nu, R);
}

Word random_word(std::mt19937_64& rng, std::size_t gens, std::size_t max_len) {
  Word w;
  const std::size_t len = rng() % (max_len + 1);
  for (std::size_t p = 0; p < len; ++p) w.push_back({static_cast<std::size_t>(rng() % gens), rng() % 2 ? 1 : -1});
  return w;
}

GroupPresentation trefoil() { return GroupPresentation::parse({"a", "b"}, {"aba = bab"}); }

}  // namespace

TEST_CASE("word parsing") {
  const std::vector<std::string> ab{"a", "b"};
  const Word comm = parse_word(ab, "a b A B");
  CHECK(comm == parse_word(ab, "a b a^-1 b^-1"));
  CHECK(comm == parse_word(ab, "[a, b]"));
  CHECK(comm == parse_word(ab, "ab = ba"));
  CHECK(comm == parse_word(ab, "a*b*A*B"));
  CHECK(parse_word(ab, "a^2 b a^-2 b^-1") == parse_word(ab, "[a^2, b]"));
  CHECK(parse_word(ab, "(ab)^-1") == parse_word(ab, "BA"));
  CHECK(parse_word(ab, "a A b b B").size() == 1);
  CHECK(parse_word(ab, "").empty());
  CHECK(parse_word(ab, "1").empty());
  CHECK(parse_word({"x1", "x2"}, "x1 x2 X1^2").size() == 4);
  try {
    parse_word(ab, "a b c");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse_word(ab, "a^"), ParseError);
  CHECK_THROWS_AS(parse_word(ab, "(a b"), ParseError);
  CHECK_THROWS_AS(GroupPresentation({"a", "A"}, {}), PreconditionError);
  CHECK_THROWS_AS(GroupPresentation({}, {}), PreconditionError);
  const auto t = trefoil();
  CHECK(t.format(t.relators()[0]) == "a b a B A B");
}

TEST_CASE("fox derivatives") {
  const auto nu = NuData::identity(2);
  const auto R = alexander_ring(Field::prime(7), 2);
  const std::vector<std::string> ab{"a", "b"};
  CHECK(fox_derivative(parse_word(ab, "ab"), 0, nu, R).to_string() == "1");
  CHECK(fox_derivative(parse_word(ab, "A"), 0, nu, R).to_string() == "-t1^-1");
  CHECK(fox_derivative(parse_word(ab, "b"), 0, nu, R).is_zero());

  const auto nu1 = to_free(2, {{1, 1}});
  const auto R1 = alexander_ring(Field::prime(7), 1);
  const Word r = trefoil().relators()[0];
  const Poly da = fox_derivative(r, 0, nu1, R1);
  CHECK(da.to_string() == "t^2 - t + 1");
  CHECK(da == fox_oracle(r, 0, nu1, R1));
}

TEST_CASE("fox derivative matches the rule-by-rule oracle") {
  std::mt19937_64 rng(5);
  const auto R = alexander_ring(Field::rationals(), 3);
  const auto nu = NuData::identity(3);
  const auto nu2 = to_free(3, {{1, 0, 2}, {0, 1, -1}});
  const auto R2 = alexander_ring(Field::rationals(), 2);
  for (int trial = 0; trial < 200; ++trial) {
    const Word w = random_word(rng, 3, 10);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(fox_derivative(w, j, nu, R) == fox_oracle(w, j, nu, R));
      CHECK(fox_derivative(w, j, nu2, R2) == fox_oracle(w, j, nu2, R2));
      // Free reduction does not change the derivative.
      CHECK(fox_derivative(w, j, nu, R) == fox_derivative(free_reduce(w), j, nu, R));
    }
  }
}

TEST_CASE("fundamental fox identity") {
  std::mt19937_64 rng(17);
  const auto R = alexander_ring(Field::prime(5), 3);
  const auto nu = NuData::identity(3);
  for (int trial = 0; trial < 500; ++trial) {
    const Word w = random_word(rng, 3, 12);
    Poly sum(R);
    for (std::size_t j = 0; j < 3; ++j)
      sum += fox_derivative(w, j, nu, R) * (abelianize(Word{{j, 1}}, nu, R) - Poly::from_int(R, 1));
    CHECK(sum == abelianize(w, nu, R) - Poly::from_int(R, 1));
  }
}

TEST_CASE("alexander complexes") {
  const auto f7 = Field::prime(7);
  const auto circle = GroupPresentation::parse({"a"}, {});
  const auto nu1 = NuData::identity(1);
  const auto c = alexander_complex(circle, nu1, f7);
  CHECK(c.ranks() == std::vector<std::size_t>{1, 1, 0});
  CHECK(c.differential(1).to_strings() == std::vector<std::vector<std::string>>{{"t - 1"}});
  auto ci = alexander_invariant(circle, nu1, f7);
  CHECK(ci.finiteness.kind == FinitenessVerdict::Kind::finite);
  CHECK(ci.finiteness.dimension == 0);
  // At the trivial character H_1 is H_1(S^1, k) = k; every other character
  // has zero homology.
  CHECK(characteristic_variety_points(circle, nu1, 1, 1, f7).to_strings() == std::vector<std::string>{"(1)"});

  const auto t = trefoil();
  const auto nu = to_free(2, {{1, 1}});
  const auto e = alexander_complex(t, nu, f7);
  CHECK(validate_complex(e).valid);
  auto inv = alexander_invariant(t, nu, f7);
  CHECK(inv.presentation.generators == 1);
  REQUIRE(inv.presentation.relations.cols() == 1);
  CHECK(inv.presentation.relations.at(0, 0).to_string() == "t^2 - t + 1");
  CHECK(inv.finiteness.kind == FinitenessVerdict::Kind::finite);
  CHECK(inv.finiteness.dimension == 2);

  // Wedge of two circles: H_1 is free of rank one.
  const auto wedge = GroupPresentation::parse({"a", "b"}, {});
  auto wi = alexander_invariant(wedge, NuData::identity(2), f7);
  CHECK(wi.finiteness.kind == FinitenessVerdict::Kind::infinite);

  // <a, b | a^2 b = b a^2>: the Alexander invariant is infinite-dimensional.
  const auto g = GroupPresentation::parse({"a", "b"}, {"a^2 b = b a^2"});
  auto gi = alexander_invariant(g, NuData::identity(2), Field::prime(5));
  CHECK(gi.finiteness.kind == FinitenessVerdict::Kind::infinite);

  NuData bad = to_free(2, {{2, 0}});
  CHECK_THROWS_AS(alexander_complex(t, bad, f7), PreconditionError);
  NuData tors = to_free(2, {{1, 1}});
  tors.target.torsion = {2};
  tors.torsion = {{1, 0}};
  CHECK_THROWS_AS(alexander_complex(t, tors, f7), PreconditionError);
}

TEST_CASE("characteristic varieties") {
  const auto f7 = Field::prime(7);
  const auto t = trefoil();
  const auto nu = to_free(2, {{1, 1}});
  const auto v = characteristic_variety_points(t, nu, 1, 1, f7);
  CHECK(v.contains({f7->from_int(3)}));
  CHECK(v.contains({f7->from_int(5)}));
  // Oracle: homology at every unit.
  const auto e = alexander_complex(t, nu, f7);
  for (long long u = 1; u < 7; ++u) {
    const Coords w{f7->from_int(u)};
    CHECK(v.contains(w) == (homology_dims_at_point(e, w, f7)[1] >= 1));
  }
  for (long long u = 2; u < 7; ++u) CHECK(v.contains({f7->from_int(u)}) == (u == 3 || u == 5));
  CHECK(characteristic_variety_points(t, nu, 0, 1, f7).to_strings() == std::vector<std::string>{"(1)"});

  // Unions of V and W agree in degrees <= 1, and scaling a d_2 column by a
  // unit changes nothing.
  const auto g = GroupPresentation::parse({"a", "b"}, {"[a^2, b]", "[a, b^3]"});
  for (long long q : {3, 5}) {
    const auto f = Field::prime(q);
    const auto nu2 = NuData::identity(2);
    const auto cx = alexander_complex(g, nu2, f);
    PointSet vs(f, 2, true), ws(f, 2, true);
    for (int i = 0; i <= 1; ++i) {
      vs = vs.united(characteristic_variety_points(g, nu2, i, 1, f));
      ws = ws.united(support_points(cx, i, 1, f, true));
    }
    CHECK(vs == ws);
    PolyMatrix d2 = cx.differential(2);
    for (std::size_t r = 0; r < d2.rows(); ++r) d2.at(r, 0) *= Poly::variable(cx.ring(), 0);
    const FreeChainComplex scaled(cx.ring(), cx.ranks(), {cx.differential(1), d2});
    for (int i = 0; i <= 2; ++i)
      for (long d = 1; d <= 2; ++d)
        CHECK(jump_locus_points(scaled, i, d, f, true) == jump_locus_points(cx, i, d, f, true));
  }
}

TEST_CASE("quadratic cup products") {
  const auto Q = Field::rationals();
  const auto torus = GroupPresentation::parse({"a", "b"}, {"[a, b]"});
  auto A = quadratic_cup(torus, Q);
  CHECK(A.dims() == std::vector<std::size_t>{1, 2, 1});
  CHECK(validate_cga(A).valid);
  CHECK(Q->equal(A.basis_product(1, 0, 1, 1)[0], Q->one()));
  CHECK(Q->equal(A.basis_product(1, 1, 1, 0)[0], Q->from_int(-1)));

  const auto g = GroupPresentation::parse({"a", "b"}, {"a^2 b a^-2 b^-1"});
  CHECK(magnus_coefficient(g.relators()[0], 0, 1) == 2);
  auto B = quadratic_cup(g, Q);
  CHECK(Q->equal(B.basis_product(1, 0, 1, 1)[0], Q->from_int(2)));
  CHECK(pairing_nondegenerate(B));
  CHECK(resonance_points(quadratic_cup(g, Field::prime(5)), 1, 1, Field::prime(5)).size() == 1);
  // Over F_2 the pairing vanishes.
  CHECK(!pairing_nondegenerate(quadratic_cup(g, Field::prime(2))));

  CHECK_THROWS_AS(quadratic_cup(trefoil(), Q), PreconditionError);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Word u = random_word(rng, 3, 4), v = random_word(rng, 3, 4);
    Word c = u;
    c.insert(c.end(), v.begin(), v.end());
    const Word ui = inverse(u), vi = inverse(v);
    c.insert(c.end(), ui.begin(), ui.end());
    c.insert(c.end(), vi.begin(), vi.end());
    const GroupPresentation p({"x", "y", "z"}, {c});
    CHECK(validate_cga(quadratic_cup(p, Field::prime(3))).valid);
    CHECK(validate_cga(quadratic_cup(p, Field::prime(2))).valid);
  }
}
