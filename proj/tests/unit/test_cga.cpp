#include "doctest.h"

#include "jumploci/cga.hpp"
#include "jumploci/errors.hpp"

using namespace jumploci;

namespace {

GradedAlgebra exterior2(const FieldPtr& f) { return pairing_cga(f, 2, 1, {{{0, 1}, {f->one()}}}); }
GradedAlgebra zero121(const FieldPtr& f) { return GradedAlgebra(f, {1, 2, 1}); }

Vec vec(const FieldPtr& f, std::vector<long long> xs) {
  Vec v;
  for (auto x : xs) v.push_back(f->from_int(x));
  return v;
}

}  // namespace

TEST_CASE("validate_cga") {
  auto Q = Field::rationals();
  CHECK(validate_cga(exterior2(Q)).valid);
  CHECK(validate_cga(zero121(Q)).valid);
  GradedAlgebra sym(Q, {1, 2, 1});
  sym.set_product(1, 1, 0, 1, {Q->one()});
  sym.set_product(1, 1, 1, 0, {Q->one()});
  auto v = validate_cga(sym);
  CHECK(!v.valid);
  CHECK(v.rule == "commutativity");
  // The same symmetric pairing is graded-commutative in characteristic 2.
  auto f2 = Field::prime(2);
  GradedAlgebra sym2(f2, {1, 2, 1});
  sym2.set_product(1, 1, 0, 1, {f2->one()});
  sym2.set_product(1, 1, 1, 0, {f2->one()});
  CHECK(validate_cga(sym2).valid);

  // Non-associative: x, y in degree 2 with x*x = z, z*y = w, x*y = 0, so
  // (x*x)*y = w but x*(x*y) = 0.
  GradedAlgebra na(Q, {1, 0, 2, 0, 1, 0, 1});
  na.set_product(2, 2, 0, 0, {Q->one()});
  na.set_product(4, 2, 0, 1, {Q->one()});
  na.set_product(2, 4, 1, 0, {Q->one()});
  auto w = validate_cga(na);
  CHECK(!w.valid);
  CHECK(w.rule == "associativity");

  GradedAlgebra bad_unit(Q, {1, 1});
  bad_unit.set_product(0, 1, 0, 0, {Q->from_int(2)});
  CHECK(validate_cga(bad_unit).rule == "unit");
}

TEST_CASE("aomoto complex") {
  auto Q = Field::rationals();
  auto A = exterior2(Q);
  auto d = aomoto(A, vec(Q, {1, 0}), Q);
  REQUIRE(d.size() == 3);
  // delta^0 = (1, 0)^T, delta^1 = (0, 1).
  CHECK(d[0].rows() == 2);
  CHECK(d[0].cols() == 1);
  CHECK(Q->is_one(d[0].at(0, 0)));
  CHECK(Q->is_zero(d[0].at(1, 0)));
  CHECK(Q->is_zero(d[1].at(0, 0)));
  CHECK(Q->is_one(d[1].at(0, 1)));
  CHECK((d[1] * d[0]).is_zero());
  for (const auto& m : aomoto(A, vec(Q, {0, 0}), Q)) CHECK(m.is_zero());
  // Zero multiplication: delta^0(a) still sends 1 to a, higher ones vanish.
  auto z = aomoto(zero121(Q), vec(Q, {3, -1}), Q);
  CHECK(Q->equal(z[0].at(0, 0), Q->from_int(3)));
  CHECK(Q->equal(z[0].at(1, 0), Q->from_int(-1)));
  CHECK(z[1].is_zero());
  CHECK(z[2].is_zero());

  auto f2 = Field::prime(2);
  GradedAlgebra sq(f2, {1, 1, 1});
  sq.set_product(1, 1, 0, 0, {f2->one()});
  CHECK_THROWS_AS(aomoto(sq, {f2->one()}, f2), PreconditionError);
}

TEST_CASE("resonance membership and points") {
  auto f3 = Field::prime(3), f5 = Field::prime(5);
  for (auto f : {f3, f5}) {
    auto ext = exterior2(f), zero = zero121(f);
    CHECK(resonance_member(ext, vec(f, {0, 0}), 0, 1, f));
    CHECK(!resonance_member(ext, vec(f, {0, 0}), 0, 2, f));
    CHECK(!resonance_member(ext, vec(f, {1, 0}), 1, 1, f));
    CHECK(resonance_member(zero, vec(f, {1, 2}), 1, 1, f));
    CHECK(resonance_points(ext, 1, 1, f).to_strings() == std::vector<std::string>{"(0, 0)"});
    CHECK(resonance_points(zero, 1, 1, f).size() == static_cast<std::size_t>(f->size() * f->size()));
    CHECK(resonance_points(ext, 0, 1, f).to_strings() == std::vector<std::string>{"(0, 0)"});
    CHECK(resonance_points(zero, 0, 2, f).empty());
  }
}

TEST_CASE("resonance ideals match points") {
  auto Q = Field::rationals();
  for (const auto& A : {exterior2(Q), zero121(Q)}) {
    for (int i = 0; i <= 2; ++i)
      for (long d = 1; d <= 2; ++d) {
        auto I = resonance_ideal(A, i, d);
        for (auto q : {3, 5, 9, 25}) {
          auto f = Field::galois(q);
          CHECK(zero_locus_points(I, f, false) == resonance_points(A, i, d, f));
        }
      }
  }
  CHECK(resonance_ideal(zero121(Q), 1, 1).is_zero_ideal());
  CHECK(resonance_ideal(exterior2(Q), 0, 2).has_unit_generator());
}

TEST_CASE("cone and nesting on sampled algebras") {
  for (auto q : {2, 3, 5}) {
    auto f = Field::prime(q);
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      auto A = sample_cga({1, 3, 2}, f, seed);
      CHECK(validate_cga(A).valid);
      for (int i = 0; i <= 2; ++i)
        for (long d = 1; d <= 3; ++d) {
          auto r = resonance_points(A, i, d, f);
          CHECK(is_cone(r));
          CHECK(resonance_points(A, i, d + 1, f).is_subset_of(r));
          if (A.dim(i) >= static_cast<std::size_t>(d)) CHECK(r.contains(Vec(3, f->zero())));
        }
      CHECK(resonance_points(A, 0, 1, f).size() == 1);
      CHECK(resonance_points(A, 0, 2, f).empty());
    }
  }
}

TEST_CASE("sample_cga") {
  auto f5 = Field::prime(5);
  auto a = sample_cga({1, 2, 1}, f5, 17), b = sample_cga({1, 2, 1}, f5, 17);
  CHECK(a == b);
  CHECK(validate_cga(a).valid);
  CHECK_THROWS_AS(sample_cga({1, 2, 1, 1}, f5, 1), PreconditionError);
  auto n = exterior2(f5);
  CHECK(pairing_nondegenerate(n));
  CHECK(!pairing_nondegenerate(zero121(f5)));
}

TEST_CASE("generic vanishing experiment") {
  auto f5 = Field::prime(5);
  auto rep = generic_vanishing_experiment({1, 2, 1}, 1, 60, f5, 3);
  CHECK(rep.open_count + rep.complement_count == 60);
  CHECK(rep.nondegenerate_in_open == rep.nondegenerate_count);
  for (const auto& r : rep.records) {
    if (r.in_complement) CHECK(r.witness_verified);
    CHECK(r.in_complement == !r.nondegenerate);
  }
  REQUIRE(rep.references.size() == 2);
  CHECK(rep.references[0].in_complement);
  CHECK(!rep.references[1].in_complement);
  for (const auto& ref : rep.references) CHECK(ref.recomputation_agrees);
  CHECK_THROWS_AS(generic_vanishing_experiment({1, 2, 1}, 1, 0, f5, 3), PreconditionError);

  auto line = generic_vanishing_experiment({1, 1, 0}, 1, 10, f5, 9);
  CHECK(line.complement_count == 0);
  CHECK(line.open_count == 10);
}
